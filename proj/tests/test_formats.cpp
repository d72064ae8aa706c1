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

#include "fea/formats.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <atomic>
#include <random>
#include <sstream>
#include <thread>

using namespace fea;

namespace {

// The 6x6 example matrix: 18 stored entries, values listed in storage
// order (row-major, columns ascending). All indices 0-based here.
const std::vector<std::vector<index_t>> kExampleRows = {
    {0, 1}, {0, 1}, {1, 2, 4, 5}, {2, 3, 4}, {3, 4, 5}, {1, 2, 3, 4}};

const std::vector<double> kExampleValues = {1.21, 83.2, 47.1, 5.12, 6.29, 2.37,
                                            8.34, 3.33, 9.24, 10.2, 1.17, 19.2,
                                            13.1, 1.19, 16.4, 15.8, 7.36, 12.2};

template <class M>
M example_matrix() {
    M m(testing::pattern_from_rows(kExampleRows));
    m.values.v = kExampleValues;
    return m;
}

} // namespace

TEST_CASE("example 6x6: CSR arrays") {
    const CsrMatrix m = example_matrix<CsrMatrix>();
    CHECK(m.n_rows() == 6);
    CHECK(m.nnz() == 18);
    // 1-based form: [1,3,5,9,12,15,19]
    CHECK(m.rows.ptr == std::vector<index_t>{0, 2, 4, 8, 11, 14, 18});
    CHECK(m.cols == std::vector<index_t>{0, 1, 0, 1, 1, 2, 4, 5, 2, 3, 4, 3, 4, 5, 1, 2, 3, 4});
}

TEST_CASE("example 6x6: CRAC arrays") {
    const CracMatrix m = example_matrix<CracMatrix>();
    CHECK(m.n_rows() == 6);
    CHECK(m.nnz() == 18);
    CHECK(m.n_runs() == 7);
    // printed 1-based: [1,3,5,9,11,13,15]
    CHECK(m.rows.ptr == std::vector<index_t>{0, 2, 4, 8, 10, 12, 14});
    CHECK(m.col_align.size() == 2 * 7 + 2);
    // pairs printed 1-based: (1,1) (1,3) (2,5) (5,7) (3,9) (4,12) (2,15), end 19
    const std::vector<index_t> pairs_no_final(m.col_align.begin(), m.col_align.end() - 2);
    CHECK(pairs_no_final ==
          std::vector<index_t>{0, 0, 0, 2, 1, 4, 4, 6, 2, 8, 3, 11, 1, 14});
    CHECK(m.col_align.back() == 18); // values-array end
}

TEST_CASE("example 6x6: coefficient access") {
    const CsrMatrix csr = example_matrix<CsrMatrix>();
    const CracMatrix crac = example_matrix<CracMatrix>();

    SUBCASE("(3,6) is found at position 8, value 3.33 (1-based figure)") {
        const auto p1 = csr.locate(2, 5);
        const auto p2 = crac.locate(2, 5);
        REQUIRE(p1.has_value());
        REQUIRE(p2.has_value());
        CHECK(*p1 == 7);
        CHECK(*p2 == 7);
        CHECK(csr.values.v[*p1] == 3.33);
        CHECK(crac.values.v[*p2] == 3.33);
    }
    SUBCASE("(1,1) reads 1.21") {
        CHECK(csr.get(0, 0) == 1.21);
        CHECK(crac.get(0, 0) == 1.21);
    }
    SUBCASE("(1,6) is absent") {
        CHECK(!csr.locate(0, 5).has_value());
        CHECK(!crac.locate(0, 5).has_value());
        CHECK(csr.get(0, 5) == 0.0);
        CHECK(crac.get(0, 5) == 0.0);
    }
    SUBCASE("(6,2) reads 16.4 at position 15 (1-based)") {
        const auto p = crac.locate(5, 1);
        REQUIRE(p.has_value());
        CHECK(*p == 14);
        CHECK(crac.values.v[*p] == 16.4);
        CHECK(csr.locate(5, 1) == p);
    }
    SUBCASE("column below the row's first run is absent") {
        CHECK(!crac.locate(2, 0).has_value()); // row 3 starts at column 2
        CHECK(!crac.locate(4, 0).has_value());
    }
}

TEST_CASE("empty pattern") {
    const SparsityPattern empty;
    const CsrMatrix csr(empty);
    const CracMatrix crac(empty);
    CHECK(csr.n_rows() == 0);
    CHECK(csr.rows.ptr == std::vector<index_t>{0});
    CHECK(crac.rows.ptr == std::vector<index_t>{0});
    CHECK(crac.col_align.size() == 2); // just the final pair
    CHECK(crac.col_align.back() == 0);
}

TEST_CASE("empty rows between stored rows") {
    const SparsityPattern p =
        testing::pattern_from_rows({{1, 2}, {}, {0, 3}, {}, {}, {2}});
    CsrMatrix csr(p);
    CracMatrix crac(p);
    for (index_t c = 0; c < 6; ++c) {
        CHECK(!csr.locate(1, c).has_value());
        CHECK(!crac.locate(1, c).has_value());
        CHECK(!crac.locate(4, c).has_value());
    }
    // rows after an empty row still resolve correctly
    CHECK(crac.locate(2, 0) == csr.locate(2, 0));
    CHECK(crac.locate(2, 3) == csr.locate(2, 3));
    CHECK(crac.locate(5, 2) == std::optional<index_t>{4});
    int visited = 0;
    crac.for_each_in_row(1, [&](index_t, index_t) { ++visited; });
    CHECK(visited == 0);
}

TEST_CASE("access equivalence against a dense mirror on random patterns") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        const index_t n = 1 + static_cast<index_t>(rng() % 32);
        const SparsityPattern p = testing::random_pattern(n, 0.3, rng);
        CsrMatrix csr(p);
        CracMatrix crac(p);

        // CRAC run-length identity
        CHECK(crac.n_runs() == count_pattern_runs(p));
        CHECK(static_cast<index_t>(crac.col_align.size()) == 2 * crac.n_runs() + 2);
        CHECK(crac.col_align.back() == p.nnz());

        testing::DenseMatrix dense(n);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (index_t r = 0; r < n; ++r) {
            for (index_t i = p.row_ptr[r]; i < p.row_ptr[r + 1]; ++i) {
                const double x = dist(rng);
                dense.at(r, p.cols[i]) += x;
                csr.values.add(i, x);
                const auto pos = crac.locate(r, p.cols[i]);
                REQUIRE(pos.has_value());
                crac.values.add(*pos, x);
            }
        }
        for (index_t r = 0; r < n; ++r) {
            for (index_t c = 0; c < n; ++c) {
                CHECK(csr.get(r, c) == dense.at(r, c));
                CHECK(crac.get(r, c) == dense.at(r, c));
                CHECK(csr.locate(r, c).has_value() == crac.locate(r, c).has_value());
            }
        }
    }
}

TEST_CASE("linear and binary row search agree everywhere") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const index_t n = 40 + static_cast<index_t>(rng() % 30); // rows past the threshold
        const SparsityPattern p = testing::random_pattern(n, 0.8, rng);
        const CsrMatrix csr(p);
        for (index_t r = 0; r < n; ++r) {
            for (index_t c = 0; c < n; ++c) {
                CHECK(csr.locate_linear(r, c) == csr.locate_binary(r, c));
            }
        }
    }
}

TEST_CASE("spin rows lock, unlock and read offsets") {
    const std::vector<index_t> offsets{0, 4, 4, 9};
    SpinRows rows((std::span<const index_t>(offsets)));

    SUBCASE("entries store offset+1") {
        CHECK(rows.raw_entry(0) == 1);
        CHECK(rows.raw_entry(3) == 10);
        for (std::size_t r = 0; r < offsets.size(); ++r) {
            CHECK(rows.offset(r) == offsets[r]);
        }
    }
    SUBCASE("lock flips the sign, unlock restores it") {
        rows.lock(1);
        CHECK(rows.raw_entry(1) == -5);
        CHECK(rows.offset(1) == 4); // reads stay valid while locked
        rows.unlock(1);
        CHECK(rows.raw_entry(1) == 5);
        CHECK(rows.offset(1) == 4);
    }
    SUBCASE("offset 0 is representable via the +1 shift") {
        rows.lock(0);
        CHECK(rows.raw_entry(0) == -1);
        CHECK(rows.offset(0) == 0);
        rows.unlock(0);
        CHECK(rows.raw_entry(0) == 1);
    }
    SUBCASE("two threads racing for one row exclude each other") {
        std::atomic<int> inside{0};
        std::atomic<bool> overlap{false};
        std::atomic<long> acquired{0};
        const auto racer = [&] {
            for (int i = 0; i < 2000; ++i) {
                rows.lock(2);
                if (inside.fetch_add(1) != 0) {
                    overlap.store(true);
                }
                inside.fetch_sub(1);
                rows.unlock(2);
                acquired.fetch_add(1);
            }
        };
        std::thread a(racer), b(racer);
        a.join();
        b.join();
        CHECK(!overlap.load());
        CHECK(acquired.load() == 4000);
        CHECK(rows.raw_entry(2) == 5);
    }
}

TEST_CASE("atomic values fetch_add") {
    AtomicValues values;
    values.v.assign(4, 0.0);

    SUBCASE("eight threads, a thousand adds each, exact integer sum") {
        std::vector<std::thread> threads;
        for (int t = 0; t < 8; ++t) {
            threads.emplace_back([&] {
                for (int i = 0; i < 1000; ++i) {
                    values.add(2, 1.0);
                }
            });
        }
        for (auto& t : threads) {
            t.join();
        }
        CHECK(values.v[2] == 8000.0);
    }
    SUBCASE("adding zero leaves the slot unchanged") {
        values.v[1] = 3.25;
        values.add(1, 0.0);
        CHECK(values.v[1] == 3.25);
    }
    SUBCASE("single-thread adds match plain addition bitwise") {
        PlainValues plain;
        plain.v.assign(4, 0.0);
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (int i = 0; i < 100; ++i) {
            const double x = dist(rng);
            values.add(0, x);
            plain.add(0, x);
        }
        CHECK(values.v[0] == plain.v[0]);
    }
}

TEST_CASE("row slice add") {
    SUBCASE("row 6 block of the 6x6 example") {
        CsrMatrix m = example_matrix<CsrMatrix>();
        const std::vector<double> src{1.0, 1.0, 1.0, 1.0};
        m.add_slice(5, 1, src); // columns 2..5, 1-based positions 15..18
        CHECK(m.values.v[14] == 16.4 + 1.0);
        CHECK(m.values.v[15] == 15.8 + 1.0);
        CHECK(m.values.v[16] == 7.36 + 1.0);
        CHECK(m.values.v[17] == 12.2 + 1.0);

        CracMatrix c = example_matrix<CracMatrix>();
        c.add_slice(5, 1, src);
        CHECK(c.values.v == m.values.v);
    }
    SUBCASE("length one degenerates to a scalar add") {
        CsrMatrix m = example_matrix<CsrMatrix>();
        const double before = m.get(3, 3);
        const std::vector<double> src{2.5};
        m.add_slice(3, 3, src);
        CHECK(m.get(3, 3) == before + 2.5);
    }
    SUBCASE("equals scalar adds for random runs") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 20; ++trial) {
            const index_t n = 8 + static_cast<index_t>(rng() % 20);
            const SparsityPattern p = testing::random_pattern(n, 0.5, rng);
            CsrMatrix a(p), b(p);
            CracMatrix ca(p), cb(p);
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            for (index_t r = 0; r < n; ++r) {
                // pick the first run of the row, if any
                if (p.row_ptr[r] == p.row_ptr[r + 1]) {
                    continue;
                }
                index_t len = 1;
                const index_t start = p.cols[p.row_ptr[r]];
                while (p.row_ptr[r] + len < p.row_ptr[r + 1] &&
                       p.cols[p.row_ptr[r] + len] == start + len) {
                    ++len;
                }
                std::vector<double> src(static_cast<std::size_t>(len));
                for (double& x : src) {
                    x = dist(rng);
                }
                a.add_slice(r, start, src);
                ca.add_slice(r, start, src);
                for (index_t k = 0; k < len; ++k) {
                    b.values.add(*b.locate(r, start + k), src[k]);
                    cb.values.add(*cb.locate(r, start + k), src[k]);
                }
            }
            CHECK(a.values.v == b.values.v);
            CHECK(ca.values.v == cb.values.v);
            CHECK(a.values.v == ca.values.v);
        }
    }
}

TEST_CASE("matrix market dump") {
    const CsrMatrix m = example_matrix<CsrMatrix>();
    std::ostringstream ss;
    write_matrix_market(m, ss);
    std::istringstream in(ss.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "%%MatrixMarket matrix coordinate real general");
    index_t rows, cols, entries;
    in >> rows >> cols >> entries;
    CHECK(rows == 6);
    CHECK(cols == 6);
    CHECK(entries == 18);
    index_t r, c;
    double v;
    in >> r >> c >> v;
    CHECK(r == 1);
    CHECK(c == 1);
    CHECK(v == 1.21);
    // CRAC dump is identical
    const CracMatrix cm = example_matrix<CracMatrix>();
    std::ostringstream ss2;
    write_matrix_market(cm, ss2);
    CHECK(ss.str() == ss2.str());
}
