#include "fusionkit/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fusionkit/errors.hpp"

namespace fusionkit {

namespace {

constexpr double kOffDiagTol = 1e-12;
constexpr int kMaxSweeps = 100;

// Column-major working matrix so Jacobi column rotations stay contiguous.
struct ColMatrix {
    size_t rows = 0, cols = 0;
    std::vector<double> v;  // column-major

    ColMatrix(size_t r, size_t c) : rows(r), cols(c), v(r * c, 0.0) {}
    double* col(size_t j) { return v.data() + j * rows; }
    const double* col(size_t j) const { return v.data() + j * rows; }
};

void rotate_columns(ColMatrix& m, size_t p, size_t q, double cs, double sn) {
    double* cp = m.col(p);
    double* cq = m.col(q);
    for (size_t i = 0; i < m.rows; ++i) {
        const double a = cp[i];
        const double b = cq[i];
        cp[i] = cs * a - sn * b;
        cq[i] = sn * a + cs * b;
    }
}

// Fills U column `j` with a unit vector orthogonal to columns [0, j); used
// when a singular value is exactly zero and the data column vanished.
void complete_column(ColMatrix& u, size_t j) {
    size_t best_axis = 0;
    double best_norm = -1.0;
    std::vector<double> best(u.rows, 0.0);
    std::vector<double> cand(u.rows, 0.0);
    for (size_t axis = 0; axis < u.rows; ++axis) {
        std::fill(cand.begin(), cand.end(), 0.0);
        cand[axis] = 1.0;
        for (size_t c = 0; c < j; ++c) {
            const double* uc = u.col(c);
            double proj = 0.0;
            for (size_t i = 0; i < u.rows; ++i) proj += uc[i] * cand[i];
            for (size_t i = 0; i < u.rows; ++i) cand[i] -= proj * uc[i];
        }
        double nrm = 0.0;
        for (double x : cand) nrm += x * x;
        if (nrm > best_norm) {
            best_norm = nrm;
            best = cand;
        }
    }
    const double nrm = std::sqrt(best_norm);
    double* uj = u.col(j);
    for (size_t i = 0; i < u.rows; ++i) uj[i] = best[i] / nrm;
}

}  // namespace

Svd2dResult svd_2d(const Tensor& m) {
    if (m.rank() != 2) {
        fail(errc::not_rank2, "svd_2d requires a rank-2 tensor, got rank " +
                                  std::to_string(m.rank()));
    }
    const size_t rows = m.shape[0];
    const size_t cols = m.shape[1];
    const size_t total = rows * cols;
    for (size_t i = 0; i < total; ++i) {
        if (!std::isfinite(m.at(i))) {
            fail(errc::non_finite_input, "svd_2d input contains a non-finite value");
        }
    }

    const size_t k = std::min(rows, cols);
    Svd2dResult result{Tensor::zeros(DType::F64, {rows, k}), std::vector<double>(k, 0.0),
                       Tensor::zeros(DType::F64, {k, cols})};
    if (k == 0) return result;

    // Work on the taller orientation so columns outnumber rows never.
    const bool transposed = rows < cols;
    const size_t wr = transposed ? cols : rows;
    const size_t wc = transposed ? rows : cols;

    ColMatrix a(wr, wc);
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) {
            const double val = m.at(i * cols + j);
            if (transposed) {
                a.col(i)[j] = val;
            } else {
                a.col(j)[i] = val;
            }
        }
    }
    ColMatrix v(wc, wc);
    for (size_t j = 0; j < wc; ++j) v.col(j)[j] = 1.0;

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (size_t p = 0; p + 1 < wc; ++p) {
            for (size_t q = p + 1; q < wc; ++q) {
                const double* cp = a.col(p);
                const double* cq = a.col(q);
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (size_t i = 0; i < wr; ++i) {
                    alpha += cp[i] * cp[i];
                    beta += cq[i] * cq[i];
                    gamma += cp[i] * cq[i];
                }
                if (alpha == 0.0 || beta == 0.0) continue;
                if (std::fabs(gamma) <= kOffDiagTol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                rotate_columns(a, p, q, cs, sn);
                rotate_columns(v, p, q, cs, sn);
            }
        }
        if (!rotated) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        fail(errc::no_convergence, "svd_2d did not converge within 100 Jacobi sweeps");
    }

    // Column norms are the singular values; sort descending (stable on ties).
    std::vector<double> sigma(wc);
    for (size_t j = 0; j < wc; ++j) {
        double s = 0.0;
        const double* cj = a.col(j);
        for (size_t i = 0; i < wr; ++i) s += cj[i] * cj[i];
        sigma[j] = std::sqrt(s);
    }
    std::vector<size_t> order(wc);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t x, size_t y) { return sigma[x] > sigma[y]; });

    ColMatrix u_work(wr, wc);
    for (size_t jj = 0; jj < wc; ++jj) {
        const size_t src = order[jj];
        result.singular_values[jj] = sigma[src];
        if (sigma[src] > 0.0) {
            const double* cj = a.col(src);
            double* uj = u_work.col(jj);
            for (size_t i = 0; i < wr; ++i) uj[i] = cj[i] / sigma[src];
        } else {
            complete_column(u_work, jj);
        }
    }

    // Undo the transposition: A = (U0 S V0^T)^T  =>  U = V0, Vt = U0^T.
    if (!transposed) {
        for (size_t i = 0; i < rows; ++i) {
            for (size_t j = 0; j < k; ++j) result.u.store(i * k + j, u_work.col(j)[i]);
        }
        for (size_t j = 0; j < k; ++j) {
            const size_t src = order[j];
            for (size_t i = 0; i < cols; ++i) result.vt.store(j * cols + i, v.col(src)[i]);
        }
    } else {
        for (size_t i = 0; i < rows; ++i) {
            for (size_t j = 0; j < k; ++j) {
                const size_t src = order[j];
                result.u.store(i * k + j, v.col(src)[i]);
            }
        }
        for (size_t j = 0; j < k; ++j) {
            for (size_t i = 0; i < cols; ++i) result.vt.store(j * cols + i, u_work.col(j)[i]);
        }
    }
    return result;
}

}  // namespace fusionkit
