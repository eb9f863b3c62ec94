#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eta_poly.hpp"
#include "lattice.hpp"

namespace miop {

// Rectangular matrix over one of the polynomial rings (homogeneous entries).
template <class Ring>
class PolyMatrix {
  public:
    PolyMatrix(std::size_t rows, std::size_t cols, const Ring& fill)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("empty matrix");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Ring& at(std::size_t j, std::size_t k) { return a_.at(j * cols_ + k); }
    const Ring& at(std::size_t j, std::size_t k) const { return a_.at(j * cols_ + k); }

  private:
    std::size_t rows_, cols_;
    std::vector<Ring> a_;
};

// Exact determinant by cofactor expansion with minor memoization over column
// subsets.  All uses here are small (<= 7x7); entries are short polynomials.
template <class Ring>
Ring lat_det(const PolyMatrix<Ring>& m, const Ring& zero) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n > 20) throw std::invalid_argument("matrix too large for cofactor expansion");

    std::vector<std::optional<Ring>> minor(static_cast<std::size_t>(1) << n);
    // minor[mask] = det of the submatrix with rows 0..popcount(mask)-1 and the
    // columns in mask; built by expanding along the last of those rows.
    for (std::size_t mask = 1; mask < minor.size(); ++mask) {
        int r = __builtin_popcountll(mask);
        Ring acc = zero;
        int pos = 0;
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (static_cast<std::size_t>(1) << i))) continue;
            const Ring& entry = m.at(static_cast<std::size_t>(r - 1), i);
            if (!entry.is_zero()) {
                Ring term = zero;
                if (r == 1) {
                    term = entry;
                } else {
                    const auto& sub = minor[mask ^ (static_cast<std::size_t>(1) << i)];
                    term = entry * (*sub);
                }
                if (((r - 1) + pos) % 2 != 0) term = -term;
                if (!any) {
                    acc = term;
                    any = true;
                } else {
                    acc += term;
                }
            }
            ++pos;
        }
        minor[mask] = acc;
    }
    return *minor[(static_cast<std::size_t>(1) << n) - 1];
}

inline LatticeFun lat_det(const PolyMatrix<LatticeFun>& m) {
    return lat_det(m, LatticeFun::zero(m.at(0, 0).model()));
}
inline EtaPoly lat_det(const PolyMatrix<EtaPoly>& m) { return lat_det(m, EtaPoly::zero()); }

}  // namespace miop
