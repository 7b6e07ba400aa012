#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ancilla {

using cx = std::complex<double>;
using CVector = std::vector<cx>;

// Input file or value failed structural validation (CLI exit 2).
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A matrix that must be unitary is not (CLI exit 3).
class unitarity_error : public std::runtime_error {
public:
    explicit unitarity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation was invoked outside its contract (CLI exit 4).
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct Tolerances {
    double rank_tol = 1e-9;    // relative singular-value cutoff
    double herm_tol = 1e-10;   // max |M - M^dag| entry
    double psd_tol = 1e-9;     // allowed negative-eigenvalue magnitude
    double margin_tol = 1e-7;  // minimum cone margin treated as nonzero
};

// Dense complex matrix, row-major.
class CMatrix {
public:
    CMatrix() : rows_(0), cols_(0) {}
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cx(0.0, 0.0)) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMatrix diagonal(const std::vector<double>& d) {
        CMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    cx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cx>& data() const { return data_; }
    std::vector<cx>& data() { return data_; }

    CMatrix dagger() const {
        CMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    cx trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
        cx t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    bool all_finite() const {
        for (const auto& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    bool is_hermitian(double tol) const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

    CVector col(std::size_t j) const {
        CVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_col(std::size_t j, const CVector& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    CMatrix operator+(const CMatrix& o) const {
        check_same_shape(o, "operator+");
        CMatrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
        return r;
    }

    CMatrix operator-(const CMatrix& o) const {
        check_same_shape(o, "operator-");
        CMatrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
        return r;
    }

    CMatrix operator*(const CMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("operator*: inner dimensions differ");
        CMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const cx a = (*this)(i, k);
                if (a == cx(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    CMatrix operator*(cx s) const {
        CMatrix r = *this;
        for (auto& z : r.data_) z *= s;
        return r;
    }

    CMatrix operator-() const { return (*this) * cx(-1.0, 0.0); }

    CMatrix& operator+=(const CMatrix& o) {
        check_same_shape(o, "operator+=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

private:
    void check_same_shape(const CMatrix& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string(what) + ": shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<cx> data_;
};

inline CMatrix operator*(cx s, const CMatrix& m) { return m * s; }
inline CMatrix operator*(double s, const CMatrix& m) { return m * cx(s, 0.0); }

// Hilbert-Schmidt inner product tr(n^dag o).
inline cx hs_inner(const CMatrix& n, const CMatrix& o) {
    if (n.rows() != o.rows() || n.cols() != o.cols())
        throw std::invalid_argument("hs_inner: shape mismatch");
    cx s = 0.0;
    for (std::size_t k = 0; k < n.data().size(); ++k)
        s += std::conj(n.data()[k]) * o.data()[k];
    return s;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cx av = a(ia, ja);
            if (av == cx(0.0, 0.0)) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    r(ia * b.rows() + ib, ja * b.cols() + jb) = av * b(ib, jb);
        }
    return r;
}

enum class Keep { A, B };

// Partial trace over a bipartite (dA*dB)x(dA*dB) matrix.
// Composite basis |a>|b| maps to row a*dB + b (A-major).
inline CMatrix partial_trace(const CMatrix& m, std::size_t d_a, std::size_t d_b, Keep keep) {
    if (m.rows() != d_a * d_b || m.cols() != d_a * d_b)
        throw std::invalid_argument("partial_trace: dimension mismatch");
    if (keep == Keep::A) {
        CMatrix r(d_a, d_a);
        for (std::size_t a = 0; a < d_a; ++a)
            for (std::size_t a2 = 0; a2 < d_a; ++a2) {
                cx s = 0.0;
                for (std::size_t b = 0; b < d_b; ++b) s += m(a * d_b + b, a2 * d_b + b);
                r(a, a2) = s;
            }
        return r;
    }
    CMatrix r(d_b, d_b);
    for (std::size_t b = 0; b < d_b; ++b)
        for (std::size_t b2 = 0; b2 < d_b; ++b2) {
            cx s = 0.0;
            for (std::size_t a = 0; a < d_a; ++a) s += m(a * d_b + b, a * d_b + b2);
            r(b, b2) = s;
        }
    return r;
}

// -- vector helpers ----------------------------------------------------------

inline cx vdot(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vdot: length mismatch");
    cx s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

inline double vnorm(const CVector& v) { return std::sqrt(std::abs(vdot(v, v))); }

inline CVector normalized(CVector v) {
    const double n = vnorm(v);
    if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
    for (auto& z : v) z /= n;
    return v;
}

inline CVector mat_vec(const CMatrix& m, const CVector& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    CVector r(m.rows(), cx(0.0, 0.0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cx s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

// |phi><psi|
inline CMatrix outer(const CVector& phi, const CVector& psi) {
    CMatrix r(phi.size(), psi.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = 0; j < psi.size(); ++j) r(i, j) = phi[i] * std::conj(psi[j]);
    return r;
}

inline CMatrix projector(const CVector& phi) { return outer(phi, phi); }

inline CVector basis_state(std::size_t d, std::size_t j) {
    CVector v(d, cx(0.0, 0.0));
    v[j] = 1.0;
    return v;
}

// Row-major d x d matrix from a length-d^2 vector, and back.
inline CMatrix unvec(const CVector& v, std::size_t rows, std::size_t cols) {
    if (v.size() != rows * cols) throw std::invalid_argument("unvec: length mismatch");
    CMatrix m(rows, cols);
    for (std::size_t k = 0; k < v.size(); ++k) m(k / cols, k % cols) = v[k];
    return m;
}

inline CVector vec(const CMatrix& m) { return m.data(); }

}  // namespace ancilla
