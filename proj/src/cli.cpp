#include "minrank/cli.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <typeinfo>
#include <variant>

#include <CLI11.hpp>

#include "minrank/completion.hpp"
#include "minrank/inverse_structure.hpp"
#include "minrank/pattern_graph.hpp"
#include "minrank/pmat.hpp"

namespace minrank {
namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1-based index set, e.g. {1,3}.
std::string index_set(const std::vector<Index>& v) {
    std::string s = "{";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k] + 1);
    return s + "}";
}

std::string size_list(const std::vector<Index>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
    return s;
}

template <class Scalar>
void print_input_summary(std::ostream& out, const char* command, const PmatDocument<Scalar>& doc) {
    out << "# minrank " << command << "\n";
    out << "field " << doc.field.to_string() << "\n";
    out << "rows " << doc.matrix.rows() << "\n";
    out << "cols " << doc.matrix.cols() << "\n";
    if (doc.blocks) {
        out << "rowblocks " << size_list(doc.blocks->row_sizes) << "\n";
        out << "colblocks " << size_list(doc.blocks->col_sizes) << "\n";
    }
    out << "# specified " << doc.matrix.pattern().specified_count() << " of "
        << doc.matrix.rows() * doc.matrix.cols() << "\n";
}

void print_certificate(std::ostream& out, const MinRankCertificate& cert) {
    out << "rowblocks " << size_list(cert.blocking.row_sizes) << "\n";
    out << "colblocks " << size_list(cert.blocking.col_sizes) << "\n";
    out << "forward ranks  " << size_list(cert.forward_ranks) << "\n";
    out << "backward ranks " << size_list(cert.backward_ranks) << "\n";
    out << "increments     " << size_list(cert.increments()) << "\n";
}

template <class Scalar>
DenseMatrix<Scalar> require_full(const PmatDocument<Scalar>& doc, const char* command) {
    if (!doc.fully_specified())
        throw DimensionError(std::string(command) + " requires a fully specified matrix (" +
                             std::to_string(doc.matrix.unknown_count()) + " entries are '?')");
    return doc.matrix.raw_values();
}

template <class Scalar>
int cmd_minrank(const PmatDocument<Scalar>& doc, std::uint64_t cap, std::ostream& out,
                std::ostream& err) {
    print_input_summary(out, "minrank", doc);
    if (doc.fully_specified()) {
        out << "fully specified\n";
        out << "minimal rank = " << rank(doc.matrix.raw_values()) << "\n";
        return 0;
    }
    if (staircase_blocking(doc.matrix.pattern())) {
        const MinRankCertificate cert = staircase_certificate(doc.matrix);
        out << "pattern: staircase\n";
        print_certificate(out, cert);
        out << "minimal rank = " << cert.min_rank << "\n";
        return 0;
    }
    if (const auto band = banded_profile(doc.matrix.pattern())) {
        const Index bound = banded_min_rank_bound(doc.matrix);
        out << "pattern: banded, diagonals " << band->lo << ".." << band->hi << "\n";
        out << "staircase-window bound = " << bound << " (lower bound; tight when every fully "
               "specified square submatrix is invertible)\n";
        if constexpr (scalar_traits<Scalar>::is_prime_field) {
            const std::uint64_t p = doc.field.modulus();
            const Index u = doc.matrix.unknown_count();
            if (detail::checked_pow(p, u, cap) <= cap) {
                const Index exact = exhaustive_min_rank(doc.matrix, cap);
                out << "exhaustive oracle: minimal rank = " << exact
                    << (exact == bound ? " (bound is tight)" : "") << "\n";
            } else {
                out << "oracle skipped: assignment count exceeds cap " << cap << "\n";
            }
        }
        return 0;
    }
    err << "pattern is neither staircase nor banded; over a prime field, "
           "'oracle' enumerates all completions\n";
    return 2;
}

template <class Scalar>
int cmd_complete(const PmatDocument<Scalar>& doc, std::optional<Index> rank_opt,
                 std::ostream& out) {
    DenseMatrix<Scalar> full = rank_opt ? generic_rank_r_complete(doc.matrix, *rank_opt)
                                        : staircase_complete(doc.matrix);
    out << "# minrank complete: rank " << rank(full) << " completion of a "
        << doc.matrix.rows() << "x" << doc.matrix.cols() << " pattern with "
        << doc.matrix.unknown_count() << " unknowns\n";
    out << emit_pmat(make_document(PartialMatrix<Scalar>::fully_specified(doc.field, full)));
    return 0;
}

template <class Scalar>
int cmd_oracle(const PmatDocument<Scalar>& doc, std::uint64_t cap, std::ostream& out) {
    print_input_summary(out, "oracle", doc);
    const Index mr = exhaustive_min_rank(doc.matrix, cap);
    if constexpr (scalar_traits<Scalar>::is_prime_field) {
        out << "assignments = "
            << detail::checked_pow(doc.field.modulus(), doc.matrix.unknown_count(), cap) << "\n";
    }
    out << "minimal rank = " << mr << "\n";
    return 0;
}

template <class Scalar>
int cmd_duality(const PmatDocument<Scalar>& doc, std::ostream& out) {
    if (!doc.blocks)
        throw DimensionError("duality requires rowblocks/colblocks directives in the document");
    const DenseMatrix<Scalar> t = require_full(doc, "duality");
    print_input_summary(out, "duality", doc);
    const DualityReport report = verify_duality(t, *doc.blocks);
    out << "lower part of the matrix:\n";
    print_certificate(out, report.lower_certificate);
    out << "strictly-lower part of the inverse:\n";
    print_certificate(out, report.strict_certificate);
    out << "lower minimal rank = " << report.lower_min_rank << "\n";
    out << "strictly-lower minimal rank of the inverse = " << report.strict_lower_min_rank << "\n";
    out << report.lower_min_rank << " + " << report.strict_lower_min_rank << " = " << report.n
        << " -- " << (report.holds ? "holds" : "VIOLATED") << "\n";
    return report.holds ? 0 : 1;
}

template <class Scalar>
int cmd_nullity(const PmatDocument<Scalar>& doc, Index row_split, Index col_split,
                std::ostream& out) {
    const DenseMatrix<Scalar> t = require_full(doc, "nullity");
    print_input_summary(out, "nullity", doc);
    const auto [ker_c, ker_r] = nullity_check(t, row_split, col_split);
    out << "split: " << row_split << " rows | " << col_split << " cols\n";
    out << "dim ker C (lower-left of the matrix)  = " << ker_c << "\n";
    out << "dim ker R (lower-left of the inverse) = " << ker_r << "\n";
    out << (ker_c == ker_r ? "equal -- holds" : "UNEQUAL -- nullity violated") << "\n";
    return ker_c == ker_r ? 0 : 1;
}

template <class Scalar>
int cmd_prop4(const PmatDocument<Scalar>& doc, std::ostream& out) {
    print_input_summary(out, "prop4", doc);
    const bool full_rank = prop4_check(doc.matrix);
    out << "diagonal nonzero and strictly-lower zero: " << (full_rank ? "yes" : "no") << "\n";
    out << "minimal rank equals the size " << doc.matrix.rows() << ": "
        << (full_rank ? "yes" : "no") << "\n";
    return 0;
}

template <class Scalar>
int cmd_asplund(const PmatDocument<Scalar>& doc, Index p, bool generators, std::ostream& out) {
    const DenseMatrix<Scalar> m = require_full(doc, "asplund");
    print_input_summary(out, "asplund", doc);
    if (!generators) {
        out << "zero above superdiagonal " << p << " with nonzero superdiagonal " << p << ": "
            << (asplund_check(m, p) ? "yes" : "no") << "\n";
        return 0;
    }
    const Generators<Scalar> gen = asplund_generators(m, p);
    out << "region: entries (i,j) with i < j + " << p << "\n";
    out << "F (" << gen.f.rows() << "x" << gen.f.cols() << "):\n";
    for (Index i = 0; i < gen.f.rows(); ++i) {
        for (Index j = 0; j < gen.f.cols(); ++j) out << (j ? " " : "") << gen.f(i, j).to_string();
        out << "\n";
    }
    out << "G (" << gen.g.rows() << "x" << gen.g.cols() << "):\n";
    for (Index i = 0; i < gen.g.rows(); ++i) {
        for (Index j = 0; j < gen.g.cols(); ++j) out << (j ? " " : "") << gen.g(i, j).to_string();
        out << "\n";
    }
    return 0;
}

template <class Scalar>
int cmd_hessenberg(const PmatDocument<Scalar>& doc, std::ostream& out) {
    const DenseMatrix<Scalar> t = require_full(doc, "hessenberg");
    print_input_summary(out, "hessenberg", doc);
    const auto [u, v] = hessenberg_semiseparable(t);
    auto print_vec = [&](const char* name, const DenseVector<Scalar>& x) {
        out << name << " = (";
        for (Index i = 0; i < x.rows(); ++i) out << (i ? ", " : "") << x(i).to_string();
        out << ")\n";
    };
    out << "lower part of the inverse is the outer product u v^T\n";
    print_vec("u", u);
    print_vec("v", v);
    return 0;
}

template <class Scalar>
int cmd_generic_check(const PmatDocument<Scalar>& doc, Index r, Index size_cap,
                      std::ostream& out) {
    print_input_summary(out, "generic-check", doc);
    int exit_code = 0;

    const SubsetWitness density = density_check(doc.matrix.pattern(), r, size_cap);
    out << "density (every k x k submatrix has at most (2k-" << r << ")*" << r
        << " specified entries): " << (density.pass ? "pass" : "fail") << "\n";
    if (!density.pass) {
        out << "  violated at rows " << index_set(density.witness_rows) << " cols "
            << index_set(density.witness_cols) << "\n";
        exit_code = 1;
    }

    const SubsetWitness full_rank = full_rank_specified_check(doc.matrix, size_cap);
    out << "full-rank (every fully specified square submatrix invertible): "
        << (full_rank.pass ? "pass" : "fail") << "\n";
    if (!full_rank.pass) {
        out << "  singular at rows " << index_set(full_rank.witness_rows) << " cols "
            << index_set(full_rank.witness_cols) << "\n";
        exit_code = 1;
    }

    if (const auto cover = line_cover(doc.matrix.pattern(), r)) {
        out << "line cover (" << r << " rows + " << r << " cols): rows " << index_set(cover->rows)
            << " cols " << index_set(cover->cols) << "\n";
    } else {
        out << "line cover (" << r << " rows + " << r << " cols): none\n";
        exit_code = 1;
    }
    return exit_code;
}

template <class Scalar>
int cmd_chordality(const PmatDocument<Scalar>& doc, Index vertex_cap, std::ostream& out) {
    print_input_summary(out, "chordality", doc);
    const PatternGraph graph(doc.matrix.pattern());
    out << "bipartite graph: " << graph.row_count() << " row vertices, " << graph.col_count()
        << " column vertices, " << graph.edge_count() << " edges\n";
    if (const auto cycle = chordless_cycle_search(graph, vertex_cap)) {
        out << "chordless cycle of length " << cycle->size() << ":";
        for (Index v : *cycle) out << " " << graph.vertex_name(v);
        out << "\n";
        out << "not chordal bipartite\n";
    } else {
        out << "chordal bipartite (no chordless cycle of length >= 6)\n";
    }
    return 0;
}

template <class Scalar>
int cmd_counterexample(const FieldSpec& fs, std::uint64_t cap, std::ostream& out) {
    const CounterexampleReport<Scalar> report = counterexample_report<Scalar>(fs);
    const PartialMatrix<Scalar> pm = counterexample_partial_matrix<Scalar>(fs);
    out << "# minrank counterexample\n";
    out << emit_pmat(make_document(pm));
    out << "rank-2 consistency equations (off-diagonal residuals):\n";
    out << "  " << report.upper_equation.to_string() << " = 0\n";
    out << "  " << report.lower_equation.to_string() << " = 0\n";
    out << "difference = " << report.inconsistency_gap.to_string() << "\n";
    out << (report.rank2_infeasible ? "no rank-2 completion exists over " + fs.to_string()
                                    : "difference vanishes; rank-2 system is consistent")
        << "\n";
    if constexpr (scalar_traits<Scalar>::is_prime_field) {
        (void)cap;
        out << "exhaustive oracle: minimal rank = " << *report.oracle_min_rank << "\n";
    }
    return 0;
}

FieldSpec parse_field_flag(const std::string& text) {
    if (text == "Q") return FieldSpec::rationals();
    if (text.rfind("GF(", 0) == 0 && text.back() == ')') {
        const std::string inner = text.substr(3, text.size() - 4);
        if (!inner.empty() && inner.find_first_not_of("0123456789") == std::string::npos)
            return FieldSpec::prime_field(std::stoull(inner));
    }
    throw ParseError("bad --field '" + text + "' (use Q or GF(p))");
}

std::pair<Index, Index> parse_split_flag(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ParseError("bad --split '" + text + "' (use I,J)");
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    if (a.empty() || b.empty() || a.find_first_not_of("0123456789") != std::string::npos ||
        b.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad --split '" + text + "' (use I,J)");
    return {std::stol(a), std::stol(b)};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact minimal-rank completions of structured partial matrices"};
    app.name("minrank");
    app.require_subcommand(1);
    unsigned long seed = 0;
    app.add_option("--seed", seed,
                   "accepted for script compatibility; every report is deterministic");

    std::string file;
    std::string field_text = "Q";
    std::string split_text;
    std::uint64_t cap = 1'000'000;
    Index size_cap = 10;
    Index vertex_cap = 16;
    Index rank_r = 0;
    Index band_p = 0;
    bool want_generators = false;
    bool have_rank = false;

    auto* c_minrank = app.add_subcommand("minrank", "minimal rank of a staircase/banded pattern");
    c_minrank->add_option("file", file, "pmat document")->required();
    c_minrank->add_option("--cap", cap, "oracle assignment cap for banded verification");

    auto* c_complete = app.add_subcommand("complete", "emit a minimal-rank or rank-r completion");
    c_complete->add_option("file", file, "pmat document")->required();
    c_complete->add_option("--rank", rank_r, "target rank (line-cover completion)")
        ->check(CLI::NonNegativeNumber);

    auto* c_oracle = app.add_subcommand("oracle", "exhaustive minimal rank over a prime field");
    c_oracle->add_option("file", file, "pmat document")->required();
    c_oracle->add_option("--cap", cap, "assignment cap (default 10^6)");

    auto* c_duality = app.add_subcommand("duality", "triangular minimal-rank duality check");
    c_duality->add_option("file", file, "pmat document with rowblocks/colblocks")->required();

    auto* c_nullity = app.add_subcommand("nullity", "kernel dimensions of complementary blocks");
    c_nullity->add_option("file", file, "pmat document")->required();
    c_nullity->add_option("--split", split_text, "row,col sizes of the top-left block")->required();

    auto* c_prop4 = app.add_subcommand("prop4", "full minimal rank of a lower-triangular pattern");
    c_prop4->add_option("file", file, "pmat document")->required();

    auto* c_asplund = app.add_subcommand("asplund", "band test / semiseparable generators");
    c_asplund->add_option("file", file, "pmat document")->required();
    c_asplund->add_option("--p", band_p, "superdiagonal index")->required()
        ->check(CLI::NonNegativeNumber);
    c_asplund->add_flag("--generators", want_generators,
                        "treat the input as an inverse and extract rank-p generators");

    auto* c_hessenberg = app.add_subcommand("hessenberg", "rank-1 generators of the inverse's lower part");
    c_hessenberg->add_option("file", file, "pmat document")->required();

    auto* c_generic = app.add_subcommand("generic-check", "density, full-rank and line-cover report");
    c_generic->add_option("file", file, "pmat document")->required();
    c_generic->add_option("--rank", rank_r, "target rank r")->required()
        ->check(CLI::NonNegativeNumber);
    c_generic->add_option("--cap", size_cap, "dimension cap for subset enumeration (default 10)");

    auto* c_chordality = app.add_subcommand("chordality", "chordless cycle search in the pattern graph");
    c_chordality->add_option("file", file, "pmat document")->required();
    c_chordality->add_option("--cap", vertex_cap, "vertex cap (default 16)");

    auto* c_counter = app.add_subcommand("counterexample",
                                         "rank-2 infeasibility report for the four-unknown example");
    c_counter->add_option("--field", field_text, "Q (default) or GF(p)");

    std::vector<const char*> argv;
    argv.push_back("minrank");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    have_rank = c_complete->count("--rank") > 0;

    try {
        if (c_counter->parsed()) {
            const FieldSpec fs = parse_field_flag(field_text);
            if (fs.is_prime_field()) return cmd_counterexample<Fp>(fs, cap, out);
            return cmd_counterexample<Rational>(fs, cap, out);
        }

        const AnyDocument doc = parse_pmat(read_file(file));
        return std::visit(
            [&](const auto& d) -> int {
                if (c_minrank->parsed()) return cmd_minrank(d, cap, out, err);
                if (c_complete->parsed())
                    return cmd_complete(d, have_rank ? std::optional<Index>(rank_r) : std::nullopt,
                                        out);
                if (c_oracle->parsed()) return cmd_oracle(d, cap, out);
                if (c_duality->parsed()) return cmd_duality(d, out);
                if (c_nullity->parsed()) {
                    const auto [rs, cs] = parse_split_flag(split_text);
                    return cmd_nullity(d, rs, cs, out);
                }
                if (c_prop4->parsed()) return cmd_prop4(d, out);
                if (c_asplund->parsed()) return cmd_asplund(d, band_p, want_generators, out);
                if (c_hessenberg->parsed()) return cmd_hessenberg(d, out);
                if (c_generic->parsed()) return cmd_generic_check(d, rank_r, size_cap, out);
                if (c_chordality->parsed()) return cmd_chordality(d, vertex_cap, out);
                err << "no subcommand\n";
                return 2;
            },
            doc);
    } catch (const TooLargeError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        // A plain Error (no subclass) is an internal consistency violation:
        // a theorem-level check failed, which signals a bug, not bad input.
        if (typeid(e) == typeid(Error)) {
            err << "internal check failed: " << e.what() << "\n";
            return 1;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace minrank
