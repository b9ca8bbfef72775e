#pragma once

#include "robinspec/taylor.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace robinspec::geometry {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Closed curve given by trigonometric polynomials in t on [0, 2pi).
class ParametricCurve {
public:
    static ParametricCurve circle(double radius);
    static ParametricCurve ellipse(double a, double b);
    /// (1 + eps cos^3 t) (a cos t, b sin t)
    static ParametricCurve egg(double a, double b, double eps);
    static ParametricCurve fourier(std::vector<double> x_cos, std::vector<double> x_sin,
                                   std::vector<double> y_cos, std::vector<double> y_sin);

    static constexpr double parameter_period() { return 6.283185307179586476925286766559; }

    Point point(double t) const;
    /// m-th derivative of (x, y) with respect to t.
    Point derivative(double t, int m) const;
    /// Taylor jets of x and y about t.
    std::pair<Taylor, Taylor> jet(double t, std::size_t order) const;
    double curvature_at_parameter(double t) const;
    double speed(double t) const;
    /// Same curve traversed backwards (t -> -t).
    ParametricCurve reversed() const;

    const std::string& name() const { return name_; }
    std::span<const double> x_cos() const { return xc_; }
    std::span<const double> x_sin() const { return xs_; }
    std::span<const double> y_cos() const { return yc_; }
    std::span<const double> y_sin() const { return ys_; }

private:
    std::string name_;
    std::vector<double> xc_, xs_, yc_, ys_;
};

struct MaxSite {
    double s = 0.0;
    double kappa = 0.0;
    double k2_fit = 0.0;
};

struct AssumptionReport {
    bool unique_max = false;
    double k2 = 0.0;
    double kappa_max = 0.0;
    std::vector<MaxSite> sites;
    std::vector<std::string> warnings;
};

class CurvatureProfile;
CurvatureProfile arc_length_reparam(const ParametricCurve& curve, std::size_t n_samples);

/// Arc-length view of a closed counterclockwise curve. Immutable.
class CurvatureProfile {
public:
    double period() const;
    double kappa(double s) const;
    double kappa_derivative(double s, int m) const;
    /// d^m kappa / ds^m at s for m = 0..order.
    std::vector<double> kappa_jet(double s, std::size_t order) const;
    /// Taylor coefficients of kappa(s + d) in d.
    Taylor kappa_series(double s, std::size_t order) const;
    /// Local degree-7 interpolant of the sample table.
    double kappa_interp(double s) const;
    /// Degree-6 least-squares fit of the table around s; returns derivatives 0..6.
    std::vector<double> kappa_fit_derivatives(double s) const;

    std::span<const double> sample_s() const;
    std::span<const double> sample_kappa() const;

    double s_max() const;
    double kappa_max() const;
    double k2() const;
    /// Half the distance to the nearest competing maximum, or period/2.
    double well_half_width() const;
    double turning() const;

    double parameter_at(double s) const;
    Point point(double s) const;
    Point outward_normal(double s) const;
    const ParametricCurve& curve() const;

    /// Same curve with arc length measured from old coordinate s0. A positive
    /// well_half_width marks the new origin as the selected curvature maximum.
    CurvatureProfile reoriginated(double s0, double well_half_width = -1.0) const;

private:
    struct Data;
    explicit CurvatureProfile(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    friend CurvatureProfile arc_length_reparam(const ParametricCurve&, std::size_t);
    std::shared_ptr<const Data> d_;
};

AssumptionReport check_assumption_A(const CurvatureProfile& profile, double tol = 1e-6);

struct LocalizedMax {
    double s_max = 0.0;
    double kappa_max = 0.0;
    double k2 = 0.0;
    CurvatureProfile profile;
    std::vector<std::string> warnings;
};

/// Polishes the chosen maximum and re-origins the profile there.
LocalizedMax localize_max(const CurvatureProfile& profile, std::optional<std::size_t> site = std::nullopt,
                          double tol = 1e-6);

}  // namespace robinspec::geometry
