#include "waveframe/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace waveframe {

namespace {

void require_same_dim(const Vec& u, const Vec& v, const char* op) {
    if (u.dim() != v.dim()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(u.dim()) + " vs " + std::to_string(v.dim()) + ")");
    }
}

}  // namespace

Vec& Vec::operator+=(const Vec& o) {
    require_same_dim(*this, o, "Vec::operator+=");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += o.x[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& o) {
    require_same_dim(*this, o, "Vec::operator-=");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= o.x[i];
    return *this;
}

Vec& Vec::operator*=(double s) {
    for (double& v : x) v *= s;
    return *this;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator*(double s, Vec a) { return a *= s; }
Vec operator*(Vec a, double s) { return a *= s; }

Mat Mat::identity(std::size_t dim) {
    Mat m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Vec Mat::row(std::size_t i) const {
    Vec r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = (*this)(i, j);
    return r;
}

void Mat::set_row(std::size_t i, const Vec& r) {
    if (r.dim() != n) throw std::invalid_argument("Mat::set_row: dimension mismatch");
    for (std::size_t j = 0; j < n; ++j) (*this)(i, j) = r[j];
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.n != b.n) throw std::invalid_argument("Mat*Mat: dimension mismatch");
    Mat c(a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t k = 0; k < a.n; ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < a.n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Mat operator+(const Mat& a, const Mat& b) {
    if (a.n != b.n) throw std::invalid_argument("Mat+Mat: dimension mismatch");
    Mat c(a.n);
    for (std::size_t i = 0; i < c.a.size(); ++i) c.a[i] = a.a[i] + b.a[i];
    return c;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (a.n != b.n) throw std::invalid_argument("Mat-Mat: dimension mismatch");
    Mat c(a.n);
    for (std::size_t i = 0; i < c.a.size(); ++i) c.a[i] = a.a[i] - b.a[i];
    return c;
}

Mat operator*(double s, Mat m) {
    for (double& v : m.a) v *= s;
    return m;
}

Vec operator*(const Mat& m, const Vec& v) {
    if (m.n != v.dim()) throw std::invalid_argument("Mat*Vec: dimension mismatch");
    Vec r(m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.n; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Mat transpose(const Mat& m) {
    Mat t(m.n);
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) t(j, i) = m(i, j);
    return t;
}

double norm(const Vec& v) {
    double s = 0.0;
    for (double c : v.x) s += c * c;
    return std::sqrt(s);
}

double max_abs(const Vec& v) {
    double m = 0.0;
    for (double c : v.x) m = std::max(m, std::abs(c));
    return m;
}

double max_abs(const Mat& m) {
    double r = 0.0;
    for (double c : m.a) r = std::max(r, std::abs(c));
    return r;
}

bool all_finite(const Vec& v) {
    for (double c : v.x)
        if (!std::isfinite(c)) return false;
    return true;
}

Vec normalized(const Vec& v) {
    const double n = norm(v);
    if (n == 0.0) throw std::domain_error("normalized: zero vector");
    return (1.0 / n) * v;
}

double dot(const Vec& u, const Vec& v) {
    require_same_dim(u, v, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) s += u[i] * v[i];
    return s;
}

Vec cross(const Vec& u, const Vec& v) {
    if (u.dim() != 3 || v.dim() != 3) {
        throw std::invalid_argument("cross: defined for dimension 3 only (" + std::to_string(u.dim()) +
                                    " vs " + std::to_string(v.dim()) +
                                    "); use hodge_complement for n-dimensional complements");
    }
    return Vec{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

Vec project(const Vec& u, const Vec& w) {
    require_same_dim(u, w, "project");
    // Degeneracy threshold scales with the operands so the check is
    // independent of physical units.
    const double scale = std::max(max_abs(u), max_abs(w));
    const double uu = dot(u, u);
    if (std::sqrt(uu) <= 1e-12 * scale || uu == 0.0) {
        throw std::domain_error("project: degenerate direction (|u| ~ 0 at operand scale)");
    }
    return (dot(u, w) / uu) * u;
}

double determinant(const Mat& m) {
    Mat lu = m;
    const std::size_t n = lu.n;
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
        if (lu(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(pivot, j), lu(col, j));
            det = -det;
        }
        det *= lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = lu(r, col) / lu(col, col);
            for (std::size_t j = col; j < n; ++j) lu(r, j) -= f * lu(col, j);
        }
    }
    return det;
}

namespace {

// Determinant of the (n-1)x(n-1) minor of the (n-1)xn row stack with
// column `skip` removed.
double minor_det(std::span<const Vec> rows, std::size_t skip) {
    const std::size_t m = rows.size();
    Mat sub(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t jj = 0;
        for (std::size_t j = 0; j < m + 1; ++j) {
            if (j == skip) continue;
            sub(i, jj++) = rows[i][j];
        }
    }
    return determinant(sub);
}

}  // namespace

Vec hodge_complement(std::span<const Vec> basis) {
    if (basis.empty()) throw std::invalid_argument("hodge_complement: empty basis");
    const std::size_t n = basis.front().dim();
    if (basis.size() != n - 1) {
        throw std::invalid_argument("hodge_complement: need n-1 vectors of dimension n (got " +
                                    std::to_string(basis.size()) + " of dimension " + std::to_string(n) + ")");
    }
    double largest = 0.0;
    for (const Vec& b : basis) {
        if (b.dim() != n) throw std::invalid_argument("hodge_complement: mixed dimensions");
        largest = std::max(largest, norm(b));
    }
    // Rank gate by modified Gram-Schmidt residuals; finite-difference inputs
    // carry O(h^2) noise, hence the relative threshold.
    const double eps_rank = 1e-9 * largest;
    std::vector<Vec> ortho;
    std::size_t rank = 0;
    double smallest_residual = largest;
    for (const Vec& b : basis) {
        Vec r = b;
        for (const Vec& q : ortho) r -= dot(q, r) * q;
        const double rn = norm(r);
        smallest_residual = std::min(smallest_residual, rn);
        if (rn > eps_rank) {
            ortho.push_back((1.0 / rn) * r);
            ++rank;
        }
    }
    if (rank < n - 1) {
        throw std::domain_error("hodge_complement: rank-deficient input (numerical rank " +
                                std::to_string(rank) + " of " + std::to_string(n - 1) + ")");
    }
    // Cofactor expansion of the formal determinant with the unit-basis
    // symbols in the last row; the expansion itself fixes the sign so that
    // det([basis; result]) > 0. Orthonormalized rows keep the minors well
    // conditioned regardless of input scale.
    Vec result(n);
    const int row_sign = ((n + 1) % 2 == 0) ? 1 : -1;  // (-1)^(n + 1) for 1-based column 1
    int sign = row_sign;
    for (std::size_t j = 0; j < n; ++j) {
        result[j] = sign * minor_det(ortho, j);
        sign = -sign;
    }
    return normalized(result);
}

bool is_orthonormal(const Mat& m, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("is_orthonormal: tol must be > 0");
    const Mat g = m * transpose(m);
    double worst = 0.0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return worst <= tol;
}

bool skew_part_check(const Mat& m, double tol) {
    if (tol < 0.0) throw std::invalid_argument("skew_part_check: tol must be >= 0");
    double worst = 0.0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) worst = std::max(worst, std::abs(m(i, j) + m(j, i)));
    return worst <= tol;
}

}  // namespace waveframe
