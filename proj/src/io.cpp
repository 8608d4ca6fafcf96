#include "bayesmet/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bayesmet {

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size()) throw Error("csv row width does not match the header");
    rows_.push_back(cells);
}

std::string CsvWriter::to_string() const {
    std::ostringstream os;
    auto emit = [&os](const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << "\r\n";
    };
    emit(header_);
    for (const auto& r : rows_) emit(r);
    return os.str();
}

void CsvWriter::write(const std::string& path) const { write_file_atomic(path, to_string()); }

std::string CsvWriter::num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return buf;
}

std::string CsvWriter::integer(long v) { return std::to_string(v); }

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp + " for writing");
        os << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot rename " + tmp + " to " + path);
}

CsvFile CsvFile::read(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open " + path);
    CsvFile f;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            f.header = cells;
            first = false;
        } else {
            f.rows.push_back(cells);
        }
    }
    return f;
}

int CsvFile::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i];
    }
    return out;
}

std::string join_nums(const std::vector<double>& v) {
    std::string out;
    char buf[40];
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
        out += buf;
    }
    return out;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        // trim
        size_t a = item.find_first_not_of(" \t");
        size_t b = item.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

std::vector<double> split_nums(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split(s)) out.push_back(std::stod(item));
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string ExperimentConfig::serialize() const {
    std::ostringstream os;
    os << "command = " << command << "\n";
    os << "states = " << join(states) << "\n";
    os << "schemes = " << join(schemes) << "\n";
    os << "w0 = " << join_nums(w0) << "\n";
    os << "theta_bar = " << fmt(theta_bar) << "\n";
    os << "mu_max = " << mu_max << "\n";
    os << "seed = " << seed << "\n";
    os << "samples = " << samples << "\n";
    os << "grid_points = " << grid_points << "\n";
    os << "taylor = " << (taylor ? "true" : "false") << "\n";
    os << "eta = " << fmt(eta) << "\n";
    os << "quad_angle = " << fmt(quad_angle) << "\n";
    os << "undo_phase = " << fmt(undo_phase) << "\n";
    os << "out = " << out << "\n";
    return os.str();
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw Error("config line " + std::to_string(lineno) + " is not key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const size_t a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const size_t b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "command")
            cfg.command = val;
        else if (key == "states")
            cfg.states = split(val);
        else if (key == "schemes")
            cfg.schemes = split(val);
        else if (key == "w0")
            cfg.w0 = split_nums(val);
        else if (key == "theta_bar")
            cfg.theta_bar = std::stod(val);
        else if (key == "mu_max")
            cfg.mu_max = std::stoi(val);
        else if (key == "seed")
            cfg.seed = std::stoull(val);
        else if (key == "samples")
            cfg.samples = std::stol(val);
        else if (key == "grid_points")
            cfg.grid_points = std::stoi(val);
        else if (key == "taylor")
            cfg.taylor = (val == "true" || val == "1");
        else if (key == "eta")
            cfg.eta = std::stod(val);
        else if (key == "quad_angle")
            cfg.quad_angle = std::stod(val);
        else if (key == "undo_phase")
            cfg.undo_phase = std::stod(val);
        else if (key == "out")
            cfg.out = val;
        else
            throw Error("unknown config key: " + key);
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open config " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

void ExperimentConfig::save(const std::string& path) const {
    write_file_atomic(path, serialize());
}

bool ExperimentConfig::operator==(const ExperimentConfig& other) const {
    return serialize() == other.serialize();
}

}  // namespace bayesmet
