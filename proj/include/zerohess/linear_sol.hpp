#pragma once

#include <vector>

#include "hessian.hpp"
#include "linalg.hpp"
#include "svs.hpp"

namespace zerohess {

/// k x n constant matrix with independent rows, k < n. Row j is the direction
/// of the operator D(a_j) = sum_i a_ji d/dx_i.
class ConstantSystem {
   public:
    explicit ConstantSystem(QMatrix a) : a_(std::move(a)) {
        if (a_.rows() == 0) fail(ErrorKind::domain, "constant system needs at least one row");
        if (a_.rows() >= a_.cols()) fail(ErrorKind::domain, "constant system needs fewer rows than columns");
        if (a_.cols() > kMaxVars) fail(ErrorKind::dimension, "at most 16 variables are supported");
        if (rank(a_) != a_.rows()) fail(ErrorKind::domain, "constant system rows are linearly dependent");
    }

    std::size_t rows() const { return a_.rows(); }
    std::size_t nvars() const { return a_.cols(); }
    const QMatrix& matrix() const { return a_; }

   private:
    QMatrix a_;
};

/// All nonzero (k+1) x (k+1) minors of A bordered below by (x_1, ..., x_n), column
/// tuples in lexicographic order, each expanded along the bordering row.
inline std::vector<MultiPoly> sol_generators(const ConstantSystem& sys) {
    const QMatrix& a = sys.matrix();
    const std::size_t k = a.rows(), n = a.cols();
    std::vector<MultiPoly> out;
    std::vector<std::size_t> cols(k + 1);
    for (std::size_t i = 0; i <= k; ++i) cols[i] = i;
    while (true) {
        MultiPoly minor(n);
        for (std::size_t j = 0; j <= k; ++j) {
            std::vector<std::vector<Rational>> sub(k, std::vector<Rational>());
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c <= k; ++c)
                    if (c != j) sub[r].push_back(a(r, cols[c]));
            Rational cof = detail::rational_determinant(std::move(sub));
            if ((k + j) % 2 == 1) cof = -cof;
            if (cof != 0) minor += MultiPoly::variable(n, cols[j]) * cof;
        }
        if (!minor.is_zero()) out.push_back(std::move(minor));

        std::size_t i = k + 1;
        while (i-- > 0)
            if (cols[i] != i + n - (k + 1)) break;
        if (i == std::size_t(-1)) break;
        ++cols[i];
        for (std::size_t j = i + 1; j <= k; ++j) cols[j] = cols[j - 1] + 1;
    }
    return out;
}

/// True iff D(a_j) f = 0 for every row a_j.
inline bool sol_membership(const MultiPoly& f, const ConstantSystem& sys) {
    if (f.nvars() != sys.nvars()) fail(ErrorKind::dimension, "form and constant system have different arity");
    for (std::size_t r = 0; r < sys.rows(); ++r)
        if (!apply_direction(sys.matrix().row(r), f).is_zero()) return false;
    return true;
}

}  // namespace zerohess
