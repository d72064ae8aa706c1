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

#ifndef FEA_BENCH_HPP
#define FEA_BENCH_HPP

#include "fea/formats.hpp"
#include "fea/mesh.hpp"
#include "fea/types.hpp"

#include <chrono>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fea {

enum class Method { sequential, atomic, spin, spin_vectorized, coloured_vectorized };
enum class MatrixFormat { csr, crac };

/// CLI-facing names: "seq", "atomic", "spin", "spin-vec", "colour-vec".
std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);
std::string_view format_name(MatrixFormat f);
std::optional<MatrixFormat> parse_format(std::string_view name);
std::vector<Method> all_methods();
std::vector<MatrixFormat> all_formats();

enum class Suite { h, p, d, single };
std::string_view suite_name(Suite s);

/// Where a benchmark case's base mesh comes from: a structured n-by-n grid
/// or an imported mesh.
struct MeshSource {
    index_t structured_n = 0; ///< used when file content is absent
    std::string label;        ///< "gen:N" or the file name
    std::string file_content; ///< MSH text, empty for generated meshes
};

MeshSource structured_source(index_t n);
MeshSource file_source(std::string label, std::string msh_content);

struct BenchConfig {
    Suite suite = Suite::single;
    std::optional<MeshSource> mesh; ///< base mesh for p/d/single; h generates its own
    int p = 1;
    int d = 1;
    int p_min = 1, p_max = 8; ///< p-suite range
    int d_min = 1, d_max = 8; ///< d-suite range
    std::vector<Method> methods = all_methods();
    std::vector<MatrixFormat> formats = all_formats();
    int runs = 30;
    int thread_count = 1;
};

struct CaseRecord {
    std::string mesh_label;
    index_t n = 0; ///< elements per side for generated meshes, 0 otherwise
    int p = 1;
    int d = 1;
    index_t dofs = 0;
    index_t nnz = 0;
    Method method = Method::sequential;
    MatrixFormat format = MatrixFormat::csr;
    int threads = 1;
    std::vector<double> t_micros; ///< one entry per timed run
    double t_avg = 0.0;
    double t_min = 0.0;
    double c = 1.0; ///< vs the sequential case of the same mesh/p/d/format
    double gamma = 0.0;
    double values_mb = 0.0;
};

struct BenchReport {
    Suite suite = Suite::single;
    std::vector<CaseRecord> cases;
    std::vector<std::string> errors; ///< per-case failures (e.g. out of memory)
};

/// n timed runs of assemble on a prebuilt target. Values are reset before
/// every run and one warm-up assembly precedes the timed ones; neither is
/// measured. Monotonic clock, microseconds.
template <class Target, class AssembleFn>
std::vector<double> time_assembly(Target& target, const AssembleFn& assemble, int n_runs) {
    using clock = std::chrono::steady_clock;
    reset_values(target);
    assemble(); // warm-up
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_runs));
    for (int i = 0; i < n_runs; ++i) {
        reset_values(target);
        const auto start = clock::now();
        assemble();
        const auto stop = clock::now();
        out.push_back(std::chrono::duration<double, std::micro>(stop - start).count());
    }
    return out;
}

/// c = t_avg(sequential) / t_avg(method).
double speed_factor(double t_avg_seq, double t_avg_method);

/// gamma = length of the CRAC column alignments array / length of the CSR
/// column indices array. Throws on an empty pattern.
double storage_factor(const CracMatrix& crac, const CsrMatrix& csr);
double storage_factor(const SparsityPattern& pattern);

BenchReport run_suite(const BenchConfig& config);

/// Raw CSV: suite,mesh,n,p,d,dofs,nnz,method,format,threads,run,micros
void write_raw_csv(const BenchReport& report, std::ostream& os);
/// Summary CSV: suite,mesh,n,p,d,dofs,nnz,method,format,threads,t_avg,t_min,c,gamma,values_mb
void write_summary_csv(const BenchReport& report, std::ostream& os);
/// Human-readable summary table.
void print_summary(const BenchReport& report, std::ostream& os);

} // namespace fea

#endif // FEA_BENCH_HPP
