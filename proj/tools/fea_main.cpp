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

#include "fea/assembly.hpp"
#include "fea/bench.hpp"
#include "fea/colouring.hpp"
#include "fea/mesh.hpp"
#include "fea/parallel.hpp"
#include "fea/pattern.hpp"
#include "fea/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Mesh specs are either "gen:N" (structured n-by-n) or a MSH file path.
fea::MeshSource parse_mesh_source(const std::string& spec) {
    if (spec.rfind("gen:", 0) == 0) {
        const long n = std::atol(spec.c_str() + 4);
        if (n < 1) {
            throw UsageError("mesh spec '" + spec + "': n must be >= 1");
        }
        return fea::structured_source(n);
    }
    return fea::file_source(spec, read_file(spec));
}

fea::Mesh load_mesh(const fea::MeshSource& src) {
    if (src.file_content.empty()) {
        return fea::generate_structured(src.structured_n);
    }
    fea::MshImport imported = fea::import_msh(src.file_content);
    for (const std::string& w : imported.warnings) {
        std::cerr << "warning: " << src.label << ": " << w << '\n';
    }
    return std::move(imported.mesh);
}

std::vector<fea::Method> parse_methods(const std::string& csv) {
    std::vector<fea::Method> out;
    std::istringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto m = fea::parse_method(item);
        if (!m) {
            throw UsageError("unknown method '" + item +
                             "' (valid: seq, atomic, spin, spin-vec, colour-vec)");
        }
        if (std::find(out.begin(), out.end(), *m) == out.end()) {
            out.push_back(*m);
        }
    }
    if (out.empty()) {
        throw UsageError("no methods given");
    }
    return out;
}

std::vector<fea::MatrixFormat> parse_formats(const std::string& csv) {
    std::vector<fea::MatrixFormat> out;
    std::istringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto f = fea::parse_format(item);
        if (!f) {
            throw UsageError("unknown format '" + item + "' (valid: csr, crac)");
        }
        if (std::find(out.begin(), out.end(), *f) == out.end()) {
            out.push_back(*f);
        }
    }
    if (out.empty()) {
        throw UsageError("no formats given");
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << content;
}

int run(int argc, char** argv) {
    CLI::App app{"Parallel finite element assembly into CSR/CRAC sparse matrices"};
    app.require_subcommand(1);

    const int default_threads = fea::default_thread_count();

    // gen-mesh
    auto* gen = app.add_subcommand("gen-mesh", "Write a structured n-by-n quad mesh");
    long gen_n = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "elements per side")->required()->check(CLI::PositiveNumber);
    gen->add_option("--out", gen_out, "output MSH path")->required();

    // colour
    auto* colour = app.add_subcommand("colour", "Greedy element colouring report");
    std::string colour_mesh = "gen:6";
    int colour_p = 1;
    std::string colour_out;
    colour->add_option("--mesh", colour_mesh, "mesh file or gen:N");
    colour->add_option("--p", colour_p, "polynomial order")->check(CLI::PositiveNumber);
    colour->add_option("--out", colour_out, "CSV dump path (element,colour)");

    // assemble
    auto* assemble = app.add_subcommand("assemble", "Run one assembly and report timing");
    std::string asm_mesh = "gen:48";
    int asm_p = 1, asm_d = 1, asm_threads = default_threads;
    std::string asm_method = "seq", asm_format = "csr", asm_dump;
    assemble->add_option("--mesh", asm_mesh, "mesh file or gen:N");
    assemble->add_option("--p", asm_p)->check(CLI::PositiveNumber);
    assemble->add_option("--d", asm_d)->check(CLI::PositiveNumber);
    assemble->add_option("--method", asm_method, "seq|atomic|spin|spin-vec|colour-vec");
    assemble->add_option("--format", asm_format, "csr|crac");
    assemble->add_option("--threads", asm_threads)->check(CLI::PositiveNumber);
    assemble->add_option("--dump", asm_dump, "write result in Matrix Market format");

    // bench
    auto* bench = app.add_subcommand("bench", "Run a benchmark suite, write raw+summary CSV");
    std::string bench_suite = "single";
    std::string bench_mesh;
    int bench_p = 1, bench_d = 1, bench_runs = 30, bench_threads = default_threads;
    std::string bench_methods = "seq,atomic,spin,spin-vec,colour-vec";
    std::string bench_formats = "csr,crac";
    std::string bench_out = "bench";
    bench->add_option("--suite", bench_suite, "h|p|d|single");
    bench->add_option("--mesh", bench_mesh, "base mesh (file or gen:N) for p/d/single");
    auto* bench_p_opt = bench->add_option("--p", bench_p)->check(CLI::PositiveNumber);
    auto* bench_d_opt = bench->add_option("--d", bench_d)->check(CLI::PositiveNumber);
    bench->add_option("--methods", bench_methods, "comma-separated method list");
    bench->add_option("--formats", bench_formats, "comma-separated format list");
    bench->add_option("--runs", bench_runs, "timed runs per case")->check(CLI::PositiveNumber);
    bench->add_option("--threads", bench_threads)->check(CLI::PositiveNumber);
    bench->add_option("--out", bench_out, "output prefix: <out>.raw.csv, <out>.summary.csv");

    // verify
    auto* verify = app.add_subcommand(
        "verify", "Cross-check all methods and formats for bitwise-identical results");
    std::string verify_mesh = "gen:16";
    int verify_p = 1, verify_d = 1, verify_threads = default_threads;
    verify->add_option("--mesh", verify_mesh, "mesh file or gen:N");
    verify->add_option("--p", verify_p)->check(CLI::PositiveNumber);
    verify->add_option("--d", verify_d)->check(CLI::PositiveNumber);
    verify->add_option("--threads", verify_threads)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            const fea::Mesh mesh = fea::generate_structured(gen_n);
            std::ostringstream ss;
            fea::write_msh(mesh, ss);
            write_file(gen_out, ss.str());
            std::cout << "wrote " << gen_out << ": " << mesh.n_nodes() << " nodes, "
                      << mesh.n_elements() << " quads\n";
        } else if (colour->parsed()) {
            const fea::Mesh mesh = load_mesh(parse_mesh_source(colour_mesh));
            const fea::DofMap map = fea::build_dof_map(mesh, colour_p, 1);
            const fea::Colouring col = fea::greedy_colouring(map);
            std::cout << "elements: " << mesh.n_elements() << "\ncolours: " << col.n_colours
                      << '\n';
            for (const auto& [c, frac] : fea::colour_distribution(col)) {
                std::cout << "  colour " << c << ": " << col.colour_classes[c].size()
                          << " elements (" << 100.0 * frac << "%)\n";
            }
            if (!colour_out.empty()) {
                std::ostringstream ss;
                fea::write_colouring_csv(col, ss);
                write_file(colour_out, ss.str());
            }
        } else if (assemble->parsed()) {
            const auto method = fea::parse_method(asm_method);
            if (!method) {
                throw UsageError("unknown method '" + asm_method +
                                 "' (valid: seq, atomic, spin, spin-vec, colour-vec)");
            }
            const auto format = fea::parse_format(asm_format);
            if (!format) {
                throw UsageError("unknown format '" + asm_format + "' (valid: csr, crac)");
            }
            const fea::MeshSource src = parse_mesh_source(asm_mesh);
            fea::BenchConfig cfg;
            cfg.suite = fea::Suite::single;
            cfg.mesh = src;
            cfg.p = asm_p;
            cfg.d = asm_d;
            cfg.methods = {*method};
            cfg.formats = {*format};
            cfg.runs = 1;
            cfg.thread_count = asm_threads;
            const fea::BenchReport report = fea::run_suite(cfg);
            fea::print_summary(report, std::cout);
            if (!asm_dump.empty()) {
                const fea::Mesh mesh = load_mesh(src);
                const fea::DofMap map = fea::build_dof_map(mesh, asm_p, asm_d);
                std::vector<fea::ElementDofs> dofs;
                for (fea::index_t e = 0; e < map.n_elements; ++e) {
                    dofs.push_back(fea::element_dofs(map, e));
                }
                const fea::SparsityPattern pattern = fea::build_pattern(map);
                fea::CsrMatrix m(pattern);
                fea::AssemblyJob job{dofs, fea::ones_supplier(map), 1};
                fea::assemble_sequential(m, job);
                std::ostringstream ss;
                fea::write_matrix_market(m, ss);
                write_file(asm_dump, ss.str());
                std::cout << "wrote " << asm_dump << '\n';
            }
        } else if (bench->parsed()) {
            fea::BenchConfig cfg;
            if (bench_suite == "h") {
                cfg.suite = fea::Suite::h;
            } else if (bench_suite == "p") {
                cfg.suite = fea::Suite::p;
            } else if (bench_suite == "d") {
                cfg.suite = fea::Suite::d;
            } else if (bench_suite == "single") {
                cfg.suite = fea::Suite::single;
            } else {
                throw UsageError("unknown suite '" + bench_suite + "' (valid: h, p, d, single)");
            }
            if (cfg.suite == fea::Suite::p && bench_p_opt->count() > 0) {
                throw UsageError("--p conflicts with --suite p (p is the swept axis)");
            }
            if (cfg.suite == fea::Suite::d && bench_d_opt->count() > 0) {
                throw UsageError("--d conflicts with --suite d (d is the swept axis)");
            }
            if (cfg.suite == fea::Suite::h && !bench_mesh.empty()) {
                throw UsageError("--mesh conflicts with --suite h (h generates its meshes)");
            }
            if (!bench_mesh.empty()) {
                cfg.mesh = parse_mesh_source(bench_mesh);
            }
            cfg.p = bench_p;
            cfg.d = bench_d;
            cfg.methods = parse_methods(bench_methods);
            cfg.formats = parse_formats(bench_formats);
            cfg.runs = bench_runs;
            cfg.thread_count = bench_threads;

            const fea::BenchReport report = fea::run_suite(cfg);
            {
                std::ostringstream raw;
                fea::write_raw_csv(report, raw);
                write_file(bench_out + ".raw.csv", raw.str());
            }
            {
                std::ostringstream sum;
                fea::write_summary_csv(report, sum);
                write_file(bench_out + ".summary.csv", sum.str());
            }
            fea::print_summary(report, std::cout);
            std::cout << "wrote " << bench_out << ".raw.csv and " << bench_out
                      << ".summary.csv\n";
            for (const std::string& e : report.errors) {
                std::cerr << "error: " << e << '\n';
            }
        } else if (verify->parsed()) {
            const fea::Mesh mesh = load_mesh(parse_mesh_source(verify_mesh));
            fea::VerifyOptions opts;
            opts.thread_count = verify_threads;
            const fea::VerifyResult res = fea::verify_methods(mesh, verify_p, verify_d, opts);
            std::cout << "dofs: " << res.dofs << ", nnz: " << res.nnz << ", combinations: "
                      << res.checked.size() << ", threads: " << verify_threads << '\n';
            if (res.ok) {
                std::cout << "verify: OK (all methods bitwise identical, totals exact)\n";
                return kExitOk;
            }
            for (const std::string& f : res.failures) {
                std::cout << "verify: FAIL " << f << '\n';
            }
            return kExitVerifyFailed;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    return run(argc, argv);
}
