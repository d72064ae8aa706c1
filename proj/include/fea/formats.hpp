/*
 *   Copyright 2026 The fea-assemble Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FEA_FORMATS_HPP
#define FEA_FORMATS_HPP

#include "fea/pattern.hpp"
#include "fea/types.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace fea {

/// Rows with at most this many stored coefficients use a linear column
/// search; longer rows use a binary search.
inline constexpr index_t kLinearSearchMax = 30;

// ---------------------------------------------------------------------------
// Row-pointer storage policies
// ---------------------------------------------------------------------------

/// Plain row offsets.
struct PlainRows {
    static constexpr bool lockable = false;

    std::vector<index_t> ptr;

    PlainRows() = default;
    explicit PlainRows(std::vector<index_t> offsets) : ptr(std::move(offsets)) {}

    index_t count() const { return static_cast<index_t>(ptr.size()); }
    index_t offset(index_t r) const { return ptr[r]; }
};

/// Row offsets stored as spin_int entries: each holds offset+1, negated
/// while its row is locked. The offsets array itself provides per-row
/// mutual exclusion, no side array of locks is needed. Offset reads are
/// wait-free and valid whether or not the row is locked.
class SpinRows {
public:
    static constexpr bool lockable = true;

    SpinRows() = default;
    explicit SpinRows(std::span<const index_t> offsets) : entries_(offsets.size()) {
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            entries_[i].store(offsets[i] + 1, std::memory_order_relaxed);
        }
    }
    SpinRows(SpinRows&&) noexcept = default;
    SpinRows& operator=(SpinRows&&) noexcept = default;

    index_t count() const { return static_cast<index_t>(entries_.size()); }

    index_t offset(index_t r) const {
        return std::abs(entries_[r].load(std::memory_order_relaxed)) - 1;
    }

    /// Spins on compare-exchange(v, -v) until this thread flips the sign.
    void lock(index_t r) {
        auto& e = entries_[r];
        index_t v = std::abs(e.load(std::memory_order_relaxed));
        while (!e.compare_exchange_weak(v, -v, std::memory_order_acquire,
                                        std::memory_order_relaxed)) {
            v = std::abs(v); // v now holds the observed entry
        }
    }

    /// Stores the absolute value back. Only the lock holder may call this.
    void unlock(index_t r) {
        auto& e = entries_[r];
        e.store(std::abs(e.load(std::memory_order_relaxed)), std::memory_order_release);
    }

    /// Signed entry including the lock bit; negative means locked.
    index_t raw_entry(index_t r) const { return entries_[r].load(std::memory_order_relaxed); }

private:
    std::vector<std::atomic<index_t>> entries_;
};

// ---------------------------------------------------------------------------
// Values storage policies
// ---------------------------------------------------------------------------

/// Plain coefficient storage: single writer, or writers serialized per row.
struct PlainValues {
    static constexpr bool atomic = false;

    std::vector<double> v;

    void add(index_t pos, double x) { v[pos] += x; }

    /// Element-wise += onto the contiguous segment starting at pos. The
    /// loop body is a plain slice addition so the compiler can vectorize.
    void add_slice(index_t pos, std::span<const double> src) {
        double* dst = v.data() + pos;
        for (std::size_t k = 0; k < src.size(); ++k) {
            dst[k] += src[k];
        }
    }
};

/// Coefficients updated through atomic fetch_add; fully concurrent per slot.
struct AtomicValues {
    static constexpr bool atomic = true;
    static_assert(std::atomic_ref<double>::required_alignment <= alignof(double));

    std::vector<double> v;

    void add(index_t pos, double x) {
        std::atomic_ref<double>(v[pos]).fetch_add(x, std::memory_order_relaxed);
    }

    void add_slice(index_t pos, std::span<const double> src) {
        for (std::size_t k = 0; k < src.size(); ++k) {
            add(pos + static_cast<index_t>(k), src[k]);
        }
    }
};

// ---------------------------------------------------------------------------
// CSR
// ---------------------------------------------------------------------------

/// Compressed sparse row storage: row pointers, per-entry column indices
/// (ascending per row) and values.
template <class Rows, class Values>
struct CsrBase {
    using rows_type = Rows;
    using values_type = Values;

    Rows rows;                 ///< n_rows + 1 offsets into cols/values
    std::vector<index_t> cols; ///< NNZ column indices
    Values values;             ///< NNZ coefficients, zeroed on construction

    CsrBase() : rows(make_rows(std::vector<index_t>{0})) {}

    explicit CsrBase(const SparsityPattern& p)
        : rows(make_rows(p.row_ptr)), cols(p.cols) {
        values.v.assign(p.cols.size(), 0.0);
    }

    index_t n_rows() const { return rows.count() - 1; }
    index_t nnz() const { return static_cast<index_t>(cols.size()); }

    std::optional<index_t> locate_linear(index_t r, index_t c) const {
        const index_t hi = rows.offset(r + 1);
        for (index_t i = rows.offset(r); i < hi; ++i) {
            if (cols[i] == c) {
                return i;
            }
            if (cols[i] > c) {
                break;
            }
        }
        return std::nullopt;
    }

    std::optional<index_t> locate_binary(index_t r, index_t c) const {
        index_t lo = rows.offset(r);
        index_t hi = rows.offset(r + 1);
        while (lo < hi) {
            const index_t mid = lo + (hi - lo) / 2;
            if (cols[mid] < c) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if (lo < rows.offset(r + 1) && cols[lo] == c) {
            return lo;
        }
        return std::nullopt;
    }

    /// Values position of coefficient (r, c), or absent.
    std::optional<index_t> locate(index_t r, index_t c) const {
        const index_t len = rows.offset(r + 1) - rows.offset(r);
        return len <= kLinearSearchMax ? locate_linear(r, c) : locate_binary(r, c);
    }

    /// Coefficient value, 0.0 when the entry is not stored.
    double get(index_t r, index_t c) const {
        const auto pos = locate(r, c);
        return pos ? values.v[*pos] : 0.0;
    }

    /// Adds src onto the coefficients (r, col_start..col_start+len-1),
    /// which must be present and consecutive in the pattern. One locate,
    /// then a contiguous slice addition.
    void add_slice(index_t r, index_t col_start, std::span<const double> src) {
        const auto pos = locate(r, col_start);
        assert(pos.has_value() && "slice start missing from pattern");
        assert(*pos + static_cast<index_t>(src.size()) <= rows.offset(r + 1) &&
               cols[*pos + static_cast<index_t>(src.size()) - 1] ==
                   col_start + static_cast<index_t>(src.size()) - 1 &&
               "slice columns not contiguous in pattern");
        values.add_slice(*pos, src);
    }

    /// Calls f(col, values_pos) for every stored entry of row r, ascending.
    template <class F>
    void for_each_in_row(index_t r, F&& f) const {
        const index_t hi = rows.offset(r + 1);
        for (index_t i = rows.offset(r); i < hi; ++i) {
            f(cols[i], i);
        }
    }

private:
    static Rows make_rows(const std::vector<index_t>& offsets) {
        if constexpr (Rows::lockable) {
            return Rows(std::span<const index_t>(offsets));
        } else {
            return Rows(offsets);
        }
    }
};

// ---------------------------------------------------------------------------
// CRAC
// ---------------------------------------------------------------------------

/// Arrays backing the compressed row aligned columns format: row pointers
/// in col_align entry units, plus (column_start, values_position) pairs,
/// one per contiguous column run, closed by a final pair whose values
/// position marks the end of the values array.
struct CracArrays {
    std::vector<index_t> row_ptr;
    std::vector<index_t> col_align;
};

CracArrays build_crac_arrays(const SparsityPattern& p);

/// Compressed row aligned columns storage. Stores the start and end of
/// each column run in the values array rather than per-entry column
/// indices; the data stays contiguous and compact.
template <class Rows, class Values>
struct CracBase {
    using rows_type = Rows;
    using values_type = Values;

    Rows rows;                      ///< n_rows + 1 offsets into col_align (entry units)
    std::vector<index_t> col_align; ///< 2 * runs + 2 entries
    Values values;                  ///< NNZ coefficients

    CracBase() : CracBase(SparsityPattern{}) {}

    explicit CracBase(const SparsityPattern& p) {
        CracArrays a = build_crac_arrays(p);
        rows = make_rows(a.row_ptr);
        col_align = std::move(a.col_align);
        values.v.assign(static_cast<std::size_t>(p.nnz()), 0.0);
    }

    index_t n_rows() const { return rows.count() - 1; }
    index_t nnz() const { return static_cast<index_t>(values.v.size()); }
    index_t n_runs() const { return (static_cast<index_t>(col_align.size()) - 2) / 2; }

    /// Linear block search: scan the row's pairs comparing the next pair's
    /// column start against c, then check whether the candidate run covers
    /// c. A candidate miss is reported as absent.
    std::optional<index_t> locate(index_t r, index_t c) const {
        index_t i = rows.offset(r);
        const index_t row_end = rows.offset(r + 1);
        if (i == row_end) {
            return std::nullopt; // empty row
        }
        while (i + 2 < row_end && col_align[i + 2] <= c) {
            i += 2;
        }
        const index_t col_start = col_align[i];
        const index_t val_start = col_align[i + 1];
        const index_t val_end = col_align[i + 3]; // next pair, possibly the final one
        if (c >= col_start && c < col_start + (val_end - val_start)) {
            return val_start + (c - col_start);
        }
        return std::nullopt;
    }

    double get(index_t r, index_t c) const {
        const auto pos = locate(r, c);
        return pos ? values.v[*pos] : 0.0;
    }

    void add_slice(index_t r, index_t col_start, std::span<const double> src) {
        const auto pos = locate(r, col_start);
        assert(pos.has_value() && "slice start missing from pattern");
        assert(locate(r, col_start + static_cast<index_t>(src.size()) - 1) ==
                   std::optional<index_t>(*pos + static_cast<index_t>(src.size()) - 1) &&
               "slice columns not contiguous in pattern");
        values.add_slice(*pos, src);
    }

    template <class F>
    void for_each_in_row(index_t r, F&& f) const {
        const index_t row_end = rows.offset(r + 1);
        for (index_t i = rows.offset(r); i < row_end; i += 2) {
            const index_t cs = col_align[i];
            const index_t vs = col_align[i + 1];
            const index_t ve = col_align[i + 3];
            for (index_t k = 0; k < ve - vs; ++k) {
                f(cs + k, vs + k);
            }
        }
    }

private:
    static Rows make_rows(const std::vector<index_t>& offsets) {
        if constexpr (Rows::lockable) {
            return Rows(std::span<const index_t>(offsets));
        } else {
            return Rows(offsets);
        }
    }
};

// ---------------------------------------------------------------------------
// The target variants used by the assembly algorithms
// ---------------------------------------------------------------------------

using CsrMatrix = CsrBase<PlainRows, PlainValues>;
using CsrAtomicMatrix = CsrBase<PlainRows, AtomicValues>;
using CsrSpinMatrix = CsrBase<SpinRows, PlainValues>;
using CracMatrix = CracBase<PlainRows, PlainValues>;
using CracAtomicMatrix = CracBase<PlainRows, AtomicValues>;
using CracSpinMatrix = CracBase<SpinRows, PlainValues>;

inline CsrMatrix csr_from_pattern(const SparsityPattern& p) { return CsrMatrix(p); }
inline CracMatrix crac_from_pattern(const SparsityPattern& p) { return CracMatrix(p); }

template <class M>
void reset_values(M& m) {
    std::fill(m.values.v.begin(), m.values.v.end(), 0.0);
}

template <class M>
double values_total(const M& m) {
    double sum = 0.0;
    for (const double x : m.values.v) {
        sum += x;
    }
    return sum;
}

/// Matrix Market coordinate dump for cross-checking with external tools.
template <class M>
void write_matrix_market(const M& m, std::ostream& os) {
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << m.n_rows() << ' ' << m.n_rows() << ' ' << m.nnz() << '\n';
    char buf[96];
    for (index_t r = 0; r < m.n_rows(); ++r) {
        m.for_each_in_row(r, [&](index_t c, index_t pos) {
            std::snprintf(buf, sizeof(buf), "%lld %lld %.17g\n",
                          static_cast<long long>(r + 1), static_cast<long long>(c + 1),
                          m.values.v[pos]);
            os << buf;
        });
    }
}

} // namespace fea

#endif // FEA_FORMATS_HPP
