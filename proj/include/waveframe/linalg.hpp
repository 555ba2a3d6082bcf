#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace waveframe {

/// Dense real vector of instantaneous per-phase quantities (V, A or Wb).
/// Dimension is the phase count; everything here is dimension-generic
/// except cross(), which is 3-D only.
struct Vec {
    std::vector<double> x;

    Vec() = default;
    explicit Vec(std::size_t dim, double fill = 0.0) : x(dim, fill) {}
    Vec(std::initializer_list<double> init) : x(init) {}
    explicit Vec(std::span<const double> values) : x(values.begin(), values.end()) {}

    std::size_t dim() const { return x.size(); }
    double& operator[](std::size_t i) { return x[i]; }
    double operator[](std::size_t i) const { return x[i]; }

    Vec& operator+=(const Vec& o);
    Vec& operator-=(const Vec& o);
    Vec& operator*=(double s);
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(double s, Vec a);
Vec operator*(Vec a, double s);

/// Dense square matrix, row-major.
struct Mat {
    std::size_t n = 0;
    std::vector<double> a;

    Mat() = default;
    explicit Mat(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}

    static Mat identity(std::size_t dim);

    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    Vec row(std::size_t i) const;
    void set_row(std::size_t i, const Vec& r);
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(double s, Mat m);
Vec operator*(const Mat& m, const Vec& v);
Mat transpose(const Mat& m);

double norm(const Vec& v);
double max_abs(const Vec& v);
double max_abs(const Mat& m);
bool all_finite(const Vec& v);
Vec normalized(const Vec& v);

/// Sum of componentwise products. Throws on dimension mismatch.
double dot(const Vec& u, const Vec& v);

/// Right-handed cross product; 3-D only. Use hodge_complement for other
/// dimensions.
Vec cross(const Vec& u, const Vec& v);

/// Component of w along u, ((u.w)/(u.u)) u. Throws when |u| is degenerate
/// relative to the operands' scale.
Vec project(const Vec& u, const Vec& w);

/// Unit vector orthogonal to the n-1 inputs (each of dimension n), sign
/// chosen so that det([inputs; result]) > 0. Reduces to the normalized
/// cross product in 3-D. Throws on rank deficiency, reporting the
/// numerical rank.
Vec hodge_complement(std::span<const Vec> basis);

/// max |(M M^T - I)_ij| <= tol
bool is_orthonormal(const Mat& m, double tol);

/// max |(M + M^T)_ij| <= tol
bool skew_part_check(const Mat& m, double tol);

/// Determinant by LU with partial pivoting.
double determinant(const Mat& m);

}  // namespace waveframe
