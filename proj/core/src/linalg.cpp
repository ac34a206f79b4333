#include "k3lat/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace k3lat {

void MatF::append_row(const std::vector<uint32_t>& r) {
    assert(r.size() == cols_ || (rows_ == 0 && cols_ == 0));
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
}

std::vector<int> MatF::rref() {
    const uint32_t p = F_.p;
    std::vector<int> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
        size_t pr = r;
        while (pr < rows_ && at(pr, c) == 0) ++pr;
        if (pr == rows_) continue;
        if (pr != r)
            for (size_t k = c; k < cols_; ++k) std::swap(at(r, k), at(pr, k));
        uint32_t inv = F_.inv(at(r, c));
        for (size_t k = c; k < cols_; ++k)
            if (at(r, k)) at(r, k) = F_.mul(at(r, k), inv);
        for (size_t r2 = 0; r2 < rows_; ++r2) {
            if (r2 == r) continue;
            uint64_t f = at(r2, c);
            if (!f) continue;
            uint64_t fneg = p - f;
            const uint32_t* src = row(r);
            uint32_t* dst = row(r2);
            for (size_t k = c; k < cols_; ++k)
                if (src[k]) dst[k] = static_cast<uint32_t>((dst[k] + fneg * src[k]) % p);
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

size_t MatF::rank() const {
    MatF copy = *this;
    return copy.rref().size();
}

std::vector<std::vector<uint32_t>> MatF::kernel() const {
    MatF copy = *this;
    std::vector<int> pivots = copy.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<uint32_t>> basis;
    for (size_t freec = 0; freec < cols_; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<uint32_t> v(cols_, 0);
        v[freec] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) {
            uint32_t coeff = copy.at(r, freec);
            if (coeff) v[pivots[r]] = F_.neg(coeff);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<uint32_t> MatF::solve(const std::vector<uint32_t>& b) const {
    MatF aug(F_, rows_, cols_ + 1);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
        aug.at(r, cols_) = b[r];
    }
    std::vector<int> pivots = aug.rref();
    for (int c : pivots)
        if (static_cast<size_t>(c) == cols_) return {};  // inconsistent
    std::vector<uint32_t> x(cols_, 0);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
    return x;
}

MatF MatF::mul(const MatF& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("MatF::mul: shape mismatch");
    MatF out(F_, rows_, o.cols_);
    const uint64_t p = F_.p;
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            uint64_t v = at(i, k);
            if (!v) continue;
            const uint32_t* orow = o.row(k);
            uint32_t* orow_out = out.row(i);
            for (size_t j = 0; j < o.cols_; ++j)
                if (orow[j]) orow_out[j] = static_cast<uint32_t>((orow_out[j] + v * orow[j]) % p);
        }
    }
    return out;
}

bool Rref::insert(std::vector<uint32_t> row) {
    for (size_t c = 0; c < cols_; ++c) {
        if (!row[c]) continue;
        int r = row_of_pivot_[c];
        if (r < 0) {
            uint32_t inv = F_.inv(row[c]);
            for (size_t k = c; k < cols_; ++k)
                if (row[k]) row[k] = F_.mul(row[k], inv);
            row_of_pivot_[c] = static_cast<int>(rows_.size());
            rows_.push_back(std::move(row));
            pivot_of_row_.push_back(static_cast<int>(c));
            return true;
        }
        uint32_t f = row[c];
        const std::vector<uint32_t>& pr = rows_[r];
        uint64_t fneg = F_.p - f;
        for (size_t k = c; k < cols_; ++k)
            if (pr[k]) row[k] = static_cast<uint32_t>((row[k] + fneg * pr[k]) % F_.p);
    }
    return false;
}

std::vector<uint32_t> MatF::charpoly() const {
    if (rows_ != cols_) throw std::invalid_argument("charpoly: not square");
    size_t n = rows_;
    if (n == 0) return {1};
    MatF H = *this;
    const uint32_t p = F_.p;
    // Hessenberg reduction by similarity transforms
    for (size_t c = 0; c + 2 <= n; ++c) {
        size_t pr = c + 1;
        while (pr < n && H.at(pr, c) == 0) ++pr;
        if (pr == n) continue;
        if (pr != c + 1) {
            for (size_t k = 0; k < n; ++k) std::swap(H.at(c + 1, k), H.at(pr, k));
            for (size_t k = 0; k < n; ++k) std::swap(H.at(k, c + 1), H.at(k, pr));
        }
        uint32_t inv = F_.inv(H.at(c + 1, c));
        for (size_t r = c + 2; r < n; ++r) {
            uint32_t f = F_.mul(H.at(r, c), inv);
            if (!f) continue;
            uint64_t fneg = p - f;
            for (size_t k = 0; k < n; ++k)
                H.at(r, k) = static_cast<uint32_t>((H.at(r, k) + fneg * H.at(c + 1, k)) % p);
            // column operation: col(c+1) += f * col(r)
            for (size_t k = 0; k < n; ++k)
                H.at(k, c + 1) =
                    static_cast<uint32_t>((H.at(k, c + 1) + static_cast<uint64_t>(f) * H.at(k, r)) % p);
        }
    }
    // char polys of leading principal Hessenberg blocks
    std::vector<std::vector<uint32_t>> cp(n + 1);
    cp[0] = {1};
    for (size_t m = 1; m <= n; ++m) {
        // p_m(t) = (t - H[m-1][m-1]) p_{m-1}(t) - sum_{i} H[m-1-i..] products
        std::vector<uint32_t> pm(m + 1, 0);
        const std::vector<uint32_t>& prev = cp[m - 1];
        // t * prev
        for (size_t k = 0; k < prev.size(); ++k) pm[k + 1] = prev[k];
        // - a_mm * prev
        uint32_t amm = H.at(m - 1, m - 1);
        for (size_t k = 0; k < prev.size(); ++k) pm[k] = F_.sub(pm[k], F_.mul(amm, prev[k]));
        // - sum over i of h products
        uint32_t hprod = 1;
        for (size_t i = 1; i < m; ++i) {
            hprod = F_.mul(hprod, H.at(m - i, m - i - 1));
            if (!hprod) break;
            uint32_t coeff = F_.mul(hprod, H.at(m - i - 1, m - 1));
            if (!coeff) continue;
            const std::vector<uint32_t>& lower = cp[m - i - 1];
            for (size_t k = 0; k < lower.size(); ++k)
                pm[k] = F_.sub(pm[k], F_.mul(coeff, lower[k]));
        }
        cp[m] = std::move(pm);
    }
    return cp[n];
}

}  // namespace k3lat
