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

#include "fea/bench.hpp"

#include "fea/assembly.hpp"
#include "fea/colouring.hpp"
#include "fea/dof_map.hpp"
#include "fea/pattern.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace fea {

std::string_view method_name(Method m) {
    switch (m) {
        case Method::sequential: return "seq";
        case Method::atomic: return "atomic";
        case Method::spin: return "spin";
        case Method::spin_vectorized: return "spin-vec";
        case Method::coloured_vectorized: return "colour-vec";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) {
    for (const Method m : all_methods()) {
        if (name == method_name(m)) {
            return m;
        }
    }
    return std::nullopt;
}

std::string_view format_name(MatrixFormat f) {
    return f == MatrixFormat::csr ? "csr" : "crac";
}

std::optional<MatrixFormat> parse_format(std::string_view name) {
    if (name == "csr") {
        return MatrixFormat::csr;
    }
    if (name == "crac") {
        return MatrixFormat::crac;
    }
    return std::nullopt;
}

std::vector<Method> all_methods() {
    return {Method::sequential, Method::atomic, Method::spin, Method::spin_vectorized,
            Method::coloured_vectorized};
}

std::vector<MatrixFormat> all_formats() {
    return {MatrixFormat::csr, MatrixFormat::crac};
}

std::string_view suite_name(Suite s) {
    switch (s) {
        case Suite::h: return "h";
        case Suite::p: return "p";
        case Suite::d: return "d";
        case Suite::single: return "single";
    }
    return "?";
}

MeshSource structured_source(index_t n) {
    return {n, "gen:" + std::to_string(n), {}};
}

MeshSource file_source(std::string label, std::string msh_content) {
    return {0, std::move(label), std::move(msh_content)};
}

double speed_factor(double t_avg_seq, double t_avg_method) {
    if (t_avg_seq <= 0.0 || t_avg_method <= 0.0) {
        throw std::invalid_argument("speed_factor requires positive average times");
    }
    return t_avg_seq / t_avg_method;
}

double storage_factor(const CracMatrix& crac, const CsrMatrix& csr) {
    if (csr.cols.empty()) {
        throw std::invalid_argument("storage_factor is undefined for an empty pattern");
    }
    return static_cast<double>(crac.col_align.size()) / static_cast<double>(csr.cols.size());
}

double storage_factor(const SparsityPattern& pattern) {
    if (pattern.nnz() == 0) {
        throw std::invalid_argument("storage_factor is undefined for an empty pattern");
    }
    const double n_ca = 2.0 * static_cast<double>(count_pattern_runs(pattern)) + 2.0;
    return n_ca / static_cast<double>(pattern.nnz());
}

namespace {

struct PreparedCase {
    const Mesh* mesh;
    std::string mesh_label;
    index_t n; // elements per side, 0 for imported meshes
    int p;
    int d;
};

// Builds/assembles one (method, format) pair and returns the timings.
template <class Plain, class Atomic, class Spin>
std::vector<double> run_method(Method method, const SparsityPattern& pattern,
                               const AssemblyJob& job, const Colouring* colouring,
                               int runs) {
    switch (method) {
        case Method::sequential: {
            Plain target(pattern);
            return time_assembly(target, [&] { assemble_sequential(target, job); }, runs);
        }
        case Method::atomic: {
            Atomic target(pattern);
            return time_assembly(target, [&] { assemble_atomic(target, job); }, runs);
        }
        case Method::spin: {
            Spin target(pattern);
            return time_assembly(target, [&] { assemble_spin(target, job); }, runs);
        }
        case Method::spin_vectorized: {
            Spin target(pattern);
            return time_assembly(
                target, [&] { assemble_spin_vectorized(target, job); }, runs);
        }
        case Method::coloured_vectorized: {
            Plain target(pattern);
            return time_assembly(
                target, [&] { assemble_coloured_vectorized(target, job, *colouring); },
                runs);
        }
    }
    throw std::logic_error("unknown method");
}

std::vector<double> run_format_method(MatrixFormat format, Method method,
                                      const SparsityPattern& pattern,
                                      const AssemblyJob& job, const Colouring* colouring,
                                      int runs) {
    if (format == MatrixFormat::csr) {
        return run_method<CsrMatrix, CsrAtomicMatrix, CsrSpinMatrix>(method, pattern, job,
                                                                     colouring, runs);
    }
    return run_method<CracMatrix, CracAtomicMatrix, CracSpinMatrix>(method, pattern, job,
                                                                    colouring, runs);
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void run_case(const PreparedCase& pc, const BenchConfig& config, BenchReport& report) {
    const DofMap map = build_dof_map(*pc.mesh, pc.p, pc.d);
    std::vector<ElementDofs> dofs;
    dofs.reserve(static_cast<std::size_t>(map.n_elements));
    for (index_t e = 0; e < map.n_elements; ++e) {
        dofs.push_back(element_dofs(map, e));
    }
    const SparsityPattern pattern = build_pattern(map);

    AssemblyJob job{dofs, ones_supplier(map), config.thread_count};

    // Methods in canonical order, sequential first as the baseline.
    std::vector<Method> methods{Method::sequential};
    for (const Method m : all_methods()) {
        if (m != Method::sequential &&
            std::find(config.methods.begin(), config.methods.end(), m) !=
                config.methods.end()) {
            methods.push_back(m);
        }
    }
    const bool emit_sequential =
        std::find(config.methods.begin(), config.methods.end(), Method::sequential) !=
        config.methods.end();

    Colouring colouring;
    if (std::find(methods.begin(), methods.end(), Method::coloured_vectorized) !=
        methods.end()) {
        colouring = greedy_colouring(map);
    }

    const double gamma = storage_factor(pattern);

    for (const MatrixFormat format : config.formats) {
        double t_seq_avg = 0.0;
        for (const Method method : methods) {
            const std::vector<double> t =
                run_format_method(format, method, pattern, job, &colouring, config.runs);

            CaseRecord rec;
            rec.mesh_label = pc.mesh_label;
            rec.n = pc.n;
            rec.p = pc.p;
            rec.d = pc.d;
            rec.dofs = map.n_dofs;
            rec.nnz = pattern.nnz();
            rec.method = method;
            rec.format = format;
            rec.threads = method == Method::sequential ? 1 : config.thread_count;
            rec.t_micros = t;
            rec.t_avg = mean(t);
            rec.t_min = *std::min_element(t.begin(), t.end());
            rec.gamma = gamma;
            rec.values_mb = values_size_mb(pattern);
            if (method == Method::sequential) {
                t_seq_avg = rec.t_avg;
                rec.c = 1.0;
                if (!emit_sequential) {
                    continue; // baseline measured but not reported
                }
            } else {
                rec.c = speed_factor(t_seq_avg, rec.t_avg);
            }
            report.cases.push_back(std::move(rec));
        }
    }
}

} // namespace

BenchReport run_suite(const BenchConfig& config) {
    if (config.runs < 1) {
        throw std::invalid_argument("bench needs at least one run");
    }
    BenchReport report;
    report.suite = config.suite;

    const auto load_base_mesh = [&](index_t default_n) -> std::pair<Mesh, MeshSource> {
        MeshSource src = config.mesh ? *config.mesh : structured_source(default_n);
        Mesh mesh = src.file_content.empty() ? generate_structured(src.structured_n)
                                             : import_msh(src.file_content).mesh;
        return {std::move(mesh), std::move(src)};
    };

    const auto guarded = [&](const PreparedCase& pc, const auto& fn) {
        try {
            fn();
        } catch (const std::bad_alloc&) {
            report.errors.push_back("case " + pc.mesh_label + " p=" + std::to_string(pc.p) +
                                    " d=" + std::to_string(pc.d) + ": out of memory");
        }
    };

    switch (config.suite) {
        case Suite::h: {
            for (const index_t n : {6, 12, 24, 48, 96, 192, 384, 768}) {
                PreparedCase pc{nullptr, "gen:" + std::to_string(n), n, config.p, config.d};
                guarded(pc, [&] {
                    const Mesh mesh = generate_structured(n);
                    pc.mesh = &mesh;
                    run_case(pc, config, report);
                });
            }
            break;
        }
        case Suite::p: {
            const auto [mesh, src] = load_base_mesh(48);
            for (int p = config.p_min; p <= config.p_max; ++p) {
                PreparedCase pc{&mesh, src.label, src.structured_n, p, config.d};
                guarded(pc, [&] { run_case(pc, config, report); });
            }
            break;
        }
        case Suite::d: {
            const auto [mesh, src] = load_base_mesh(192);
            for (int d = config.d_min; d <= config.d_max; ++d) {
                PreparedCase pc{&mesh, src.label, src.structured_n, config.p, d};
                guarded(pc, [&] { run_case(pc, config, report); });
            }
            break;
        }
        case Suite::single: {
            const auto [mesh, src] = load_base_mesh(48);
            PreparedCase pc{&mesh, src.label, src.structured_n, config.p, config.d};
            guarded(pc, [&] { run_case(pc, config, report); });
            break;
        }
    }
    return report;
}

namespace {

void write_case_prefix(const BenchReport& report, const CaseRecord& r, std::ostream& os) {
    os << suite_name(report.suite) << ',' << r.mesh_label << ',' << r.n << ',' << r.p << ','
       << r.d << ',' << r.dofs << ',' << r.nnz << ',' << method_name(r.method) << ','
       << format_name(r.format) << ',' << r.threads;
}

} // namespace

void write_raw_csv(const BenchReport& report, std::ostream& os) {
    os << "suite,mesh,n,p,d,dofs,nnz,method,format,threads,run,micros\n";
    char buf[48];
    for (const CaseRecord& r : report.cases) {
        for (std::size_t i = 0; i < r.t_micros.size(); ++i) {
            write_case_prefix(report, r, os);
            std::snprintf(buf, sizeof(buf), ",%zu,%.3f\n", i + 1, r.t_micros[i]);
            os << buf;
        }
    }
}

void write_summary_csv(const BenchReport& report, std::ostream& os) {
    os << "suite,mesh,n,p,d,dofs,nnz,method,format,threads,t_avg,t_min,c,gamma,values_mb\n";
    char buf[128];
    for (const CaseRecord& r : report.cases) {
        write_case_prefix(report, r, os);
        std::snprintf(buf, sizeof(buf), ",%.3f,%.3f,%.4f,%.6f,%.6f\n", r.t_avg, r.t_min,
                      r.c, r.gamma, r.values_mb);
        os << buf;
    }
}

void print_summary(const BenchReport& report, std::ostream& os) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-10s %3s %3s %10s %10s %-10s %-5s %3s %12s %12s %7s %7s\n",
                  "mesh", "p", "d", "dofs", "nnz", "method", "fmt", "thr", "t_avg[us]",
                  "t_min[us]", "c", "gamma");
    os << buf;
    for (const CaseRecord& r : report.cases) {
        std::snprintf(buf, sizeof(buf),
                      "%-10s %3d %3d %10lld %10lld %-10s %-5s %3d %12.2f %12.2f %7.3f %7.4f\n",
                      r.mesh_label.c_str(), r.p, r.d, static_cast<long long>(r.dofs),
                      static_cast<long long>(r.nnz), std::string(method_name(r.method)).c_str(),
                      std::string(format_name(r.format)).c_str(), r.threads, r.t_avg, r.t_min,
                      r.c, r.gamma);
        os << buf;
    }
    for (const std::string& e : report.errors) {
        os << "error: " << e << '\n';
    }
}

} // namespace fea
