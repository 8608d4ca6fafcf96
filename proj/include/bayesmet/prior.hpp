#pragma once

#include "bayesmet/common.hpp"

namespace bayesmet {

/// Flat prior 1/W0 on [mean - W0/2, mean + W0/2].
struct FlatPrior {
    double mean = 0.0;
    double width = 0.0;

    FlatPrior() = default;
    FlatPrior(double mean_, double width_) : mean(mean_), width(width_) {
        if (!(width > 0.0)) throw Error("flat prior requires positive width");
    }

    double lo() const { return mean - width / 2; }
    double hi() const { return mean + width / 2; }
    double density() const { return 1.0 / width; }
    double variance() const { return width * width / 12.0; }
    double second_moment() const { return variance() + mean * mean; }
    bool contains(double theta, double slack = 0.0) const {
        return theta >= lo() - slack && theta <= hi() + slack;
    }
};

/// Composite-Simpson grid over the prior support; weights sum to the width.
struct ThetaGrid {
    RealVector points;
    RealVector weights;

    static ThetaGrid simpson(const FlatPrior& prior, int n);
    int size() const { return static_cast<int>(points.size()); }
};

inline ThetaGrid ThetaGrid::simpson(const FlatPrior& prior, int n) {
    if (n < 3) n = 3;
    if (n % 2 == 0) ++n;
    ThetaGrid g;
    g.points.resize(n);
    g.weights.resize(n);
    const double h = prior.width / (n - 1);
    for (int i = 0; i < n; ++i) {
        g.points[i] = prior.lo() + h * i;
        double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        g.weights[i] = w * h / 3.0;
    }
    return g;
}

}  // namespace bayesmet
