#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bayesmet/common.hpp"

namespace bayesmet {

/// RFC-4180-style CSV with a header row; written atomically (temp + rename).
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(const std::vector<std::string>& cells);
    void write(const std::string& path) const;
    std::string to_string() const;

    static std::string num(double v);      // scientific, 9 significant digits
    static std::string integer(long v);

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Minimal CSV reader for this project's own files: header + string cells.
struct CsvFile {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    static CsvFile read(const std::string& path);
    int column(const std::string& name) const;  // -1 when absent
};

/// Key=value experiment description; unknown keys are rejected and the
/// serialised form round-trips exactly.
struct ExperimentConfig {
    std::string command = "simulate";  // simulate | personick | state-info | loss
    std::vector<std::string> states{"noon"};
    std::vector<std::string> schemes{"optimal"};
    std::vector<double> w0{M_PI / 2};
    double theta_bar = 0.0;
    int mu_max = 10;
    std::uint64_t seed = 20190527;
    long samples = 50000;
    int grid_points = 0;
    bool taylor = false;
    double eta = 0.9;
    double quad_angle = M_PI / 8;
    double undo_phase = M_PI;
    std::string out;

    std::string serialize() const;
    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);
    void save(const std::string& path) const;

    bool operator==(const ExperimentConfig& other) const;
};

void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace bayesmet
