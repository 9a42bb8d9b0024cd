#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "unirec/errors.hpp"
#include "unirec/invariants.hpp"
#include "unirec/json_io.hpp"
#include "unirec/matrix.hpp"
#include "unirec/recursive.hpp"
#include "unirec/symmetric.hpp"

namespace unirec::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

struct Io {
    std::string input;  // empty or "-" reads stdin
    std::string out_path;
    std::string format = "json";
};

void check_paths(const Io& o) {
    if (!o.input.empty() && o.input != "-") {
        std::error_code ec;
        if (!fs::is_regular_file(o.input, ec)) {
            throw io::FormatError("input file not found: " + o.input);
        }
    }
    if (!o.out_path.empty()) {
        const auto parent = fs::absolute(o.out_path).parent_path();
        std::error_code ec;
        if (!fs::is_directory(parent, ec)) {
            throw io::FormatError("output directory does not exist: " + parent.string());
        }
    }
}

Json read_input(const Io& o, std::istream& in) {
    std::string text;
    if (o.input.empty() || o.input == "-") {
        text.assign(std::istreambuf_iterator<char>(in), {});
    } else {
        std::ifstream f(o.input, std::ios::binary);
        if (!f) {
            throw io::FormatError("cannot read " + o.input);
        }
        text.assign(std::istreambuf_iterator<char>(f), {});
    }
    return io::parse(text);
}

void emit(const Io& o, std::ostream& out, const std::string& text) {
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw io::FormatError("cannot write " + o.out_path);
    }
    f << text;
}

void emit_json(const Io& o, std::ostream& out, const Json& j) {
    if (o.format != "json") {
        throw io::FormatError("--format csv applies to matrix output only");
    }
    emit(o, out, j.dump() + "\n");
}

void emit_matrix(const Io& o, std::ostream& out, const ComplexMatrix& m) {
    emit(o, out, o.format == "csv" ? io::to_csv(m) : io::to_json(m).dump() + "\n");
}

bool is_decomposition(const Json& j) { return j.is_object() && j.contains("factors"); }
bool is_symmetric_params(const Json& j) { return j.is_object() && j.contains("thetas"); }

void require_within(const char* what, double residual, double tol) {
    if (!(residual <= tol)) {
        std::ostringstream os;
        os.precision(3);
        os << what << " residual " << std::scientific << residual << " exceeds tolerance " << tol;
        throw ConsistencyError(os.str(), residual);
    }
}

std::vector<std::size_t> parse_target(const std::string& spec, std::size_t n) {
    if (spec == "asc" || spec == "ascending") return ascending_orders(n);
    if (spec == "desc" || spec == "descending") return descending_orders(n);
    std::vector<std::size_t> seq;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long v = std::stol(item, &used);
            if (used != item.size() || v < 2) throw std::invalid_argument(item);
            seq.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw io::FormatError("--target: \"" + item + "\" is not an order ≥ 2");
        }
    }
    return seq;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
    std::string name;
    double residual;
    double tolerance;
};

double epsilon_residual_n3(const PlaquetteTable& t) {
    // Pair (α,β) with α<β is labelled by the missing index γ; sign is ε_αβγ.
    const std::array<double, 3> sign{1.0, -1.0, 1.0};  // pairs 01, 02, 12
    const auto pairs = ordered_pairs(3);
    const double j = t.im(pairs[0], pairs[0]);
    double m = 0.0;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            m = std::max(m, std::abs(t.im(pairs[r], pairs[c]) - sign[r] * sign[c] * j));
        }
    }
    return m;
}

double sextet_residual(const ComplexMatrix& x) {
    const std::size_t n = x.rows();
    double m = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t g = 0; g < n; ++g) {
                if (a == b || b == g || a == g) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (std::abs(x(b, j)) <= 1e-6) continue;
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t l = 0; l < n; ++l) {
                            if (j == k || j == l || k == l) continue;
                            m = std::max(m, std::abs(reduce_sextet(x, {a, b, g}, {j, k, l}).residual()));
                        }
                }
            }
    return m;
}

std::vector<Check> identity_suite(const ComplexMatrix& x, double tol, std::uint64_t seed, Json& notes) {
    const std::size_t n = x.rows();
    std::vector<Check> checks;
    checks.push_back({"unitarity", unitarity_defect(x), tol});
    if (!(checks.back().residual <= tol)) {
        notes.push_back("input is not unitary; remaining checks skipped");
        return checks;
    }

    const auto d = decompose(x, tol);
    checks.push_back({"round_trip", max_norm_diff(compose(d), x), tol});
    checks.push_back({"parameter_count",
                      std::abs(double(real_parameter_count(d)) - double(n * n)), 0.0});
    double theta_range = 0.0;
    for (const auto& f : d.factors) {
        theta_range = std::max({theta_range, -f.theta, f.theta - M_PI / 2});
    }
    checks.push_back({"theta_range", theta_range, 0.0});

    const auto asc = gauge_fix(reorder_chain(d, ascending_orders(n)));
    checks.push_back({"reorder_gauge", max_norm_diff(compose(asc), x), tol});

    if (n < 2) return checks;
    const auto table = plaquette_table(x);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(-M_PI, M_PI);
    PhaseVector left(n);
    PhaseVector right(n);
    for (std::size_t i = 0; i < n; ++i) {
        left[i] = phase(rng);
        right[i] = phase(rng);
    }
    const auto rephased = phase_matrix(left) * x * phase_matrix(right);
    checks.push_back({"rephasing", table.max_diff(plaquette_table(rephased)), tol});

    if (n >= 3) {
        checks.push_back({"sextet", sextet_residual(x), tol});
    }
    if (n == 3) {
        const double j = table.im({0, 1}, {0, 1});
        checks.push_back({"epsilon_pattern", epsilon_residual_n3(table), tol});
        double area = 0.0;
        for (const auto& p : triangle_areas(x)) {
            area = std::max(area, std::abs(p.area - std::abs(j) / 2.0));
        }
        checks.push_back({"triangle_areas", area, tol});
        checks.push_back({"closed_form_j", std::abs(closed_form_j_n3(asc) - j), tol});
    }
    if (n == 4) {
        const auto cf = closed_forms_n4(asc);
        checks.push_back({"closed_form_3434", std::abs(cf.p3434 - table.im({2, 3}, {2, 3})), tol});
        checks.push_back({"closed_form_3424", std::abs(cf.p3424 - table.im({2, 3}, {1, 3})), tol});
        try {
            const auto rel = panel_relation_residuals(x);
            double m = 0.0;
            for (double r : rel) m = std::max(m, std::abs(r));
            checks.push_back({"panel_relations", m, tol});
            const auto basis = basis_solve_n4(x);
            if (basis.solvable) {
                checks.push_back({"basis_solve", basis.max_error(), tol});
            } else {
                notes.push_back("basis system singular; basis_solve skipped");
            }
        } catch (const PreconditionError& e) {
            notes.push_back(std::string("panel checks skipped: ") + e.what());
        }
    }
    if (n == 4 || n == 5) {
        // ω's are phases of the characteristic components; undefined where one vanishes.
        double smallest = 1.0;
        for (const auto& f : asc.factors) {
            for (const auto& z : f.chr.components()) smallest = std::min(smallest, std::abs(z));
        }
        const bool phases_defined = smallest > 1e-8;
        if (!phases_defined) {
            notes.push_back("a characteristic component vanishes; omega invariance skipped");
        }
        double m = 0.0;
        for (auto s : {Symmetry::S1, Symmetry::S2, Symmetry::S3}) {
            if (n == 4 && s == Symmetry::S3) continue;
            const auto moved = compose(apply_symmetry(asc, s, phase(rng)));
            m = std::max(m, table.max_diff(plaquette_table(moved)));
            if (!phases_defined) continue;
            const auto w0 = omega_from_params(asc).omegas;
            const auto w1 = omega_from_params(apply_symmetry(asc, s, phase(rng))).omegas;
            for (std::size_t i = 0; i < w0.size(); ++i) {
                m = std::max(m, std::abs(canonical_angle(w0[i] - w1[i])));
            }
        }
        checks.push_back({"symmetries", m, tol});
    }
    return checks;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Recursive parameterisation of unitary matrices", "unirec"};
    app.require_subcommand(1);
    Io o;

    auto add_io = [&o](CLI::App* sub, bool with_input) {
        if (with_input) {
            sub->add_option("input", o.input, "Input JSON file (default: stdin)");
        }
        sub->add_option("--out,-o", o.out_path, "Write output here instead of stdout");
        sub->add_option("--format", o.format, "Output format for matrices")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    std::size_t gen_n = 0;
    std::uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen", "Emit a Haar-random unitary matrix");
    gen->add_option("--n", gen_n, "Dimension")->required()->check(CLI::Range(1, 64));
    gen->add_option("--seed", gen_seed, "Random seed");
    add_io(gen, false);

    auto* compose_cmd = app.add_subcommand("compose", "Build the matrix of a decomposition or symmetric parameter set");
    add_io(compose_cmd, true);

    double dec_tol = tolerance::kUnitarity;
    std::string dec_order = "desc";
    std::string dec_gauge = "canonical";
    auto* decompose_cmd = app.add_subcommand("decompose", "Factorise a unitary matrix");
    decompose_cmd->add_option("--tol", dec_tol, "Unitarity tolerance")->check(CLI::PositiveNumber);
    decompose_cmd->add_option("--order", dec_order, "Factor order")->check(CLI::IsMember({"asc", "desc"}));
    decompose_cmd->add_option("--gauge", dec_gauge, "Phase convention")
        ->check(CLI::IsMember({"canonical", "raw"}));
    add_io(decompose_cmd, true);

    std::string target;
    auto* reorder_cmd = app.add_subcommand("reorder", "Reorder the factors of a decomposition");
    reorder_cmd->add_option("--target", target, "asc, desc or a comma list of orders such as 3,2,4")->required();
    add_io(reorder_cmd, true);

    double inv_tol = kVanishing;
    auto* invariants_cmd = app.add_subcommand("invariants", "Plaquettes, triangle areas and invariant phases");
    invariants_cmd->add_option("--tol", inv_tol, "Modulus below which an element counts as zero")
        ->check(CLI::NonNegativeNumber);
    add_io(invariants_cmd, true);

    double panel_vanish = kVanishing;
    double panel_check = tolerance::kUnitarity;
    auto* panel_cmd = app.add_subcommand("panel", "Panel lattice, relation residuals and basis reconstruction (n = 4)");
    panel_cmd->add_option("--vanish", panel_vanish, "Modulus below which a divisor counts as zero")
        ->check(CLI::NonNegativeNumber);
    panel_cmd->add_option("--check", panel_check, "Residual tolerance")->check(CLI::PositiveNumber);
    add_io(panel_cmd, true);

    double zt_tol = kVanishing;
    double zt_vanish = 1e-10;
    auto* zt_cmd = app.add_subcommand("zerotexture", "Analyse a 4x4 unitary with two vanishing entries");
    zt_cmd->add_option("--tol", zt_tol, "Modulus below which an entry counts as zero")->check(CLI::PositiveNumber);
    zt_cmd->add_option("--vanish", zt_vanish, "Threshold for vanishing invariants")->check(CLI::PositiveNumber);
    add_io(zt_cmd, true);

    double sym_check = tolerance::kUnitarity;
    auto* sym_cmd = app.add_subcommand("symmetric", "Build a symmetric unitary from parameters, or check a matrix");
    sym_cmd->add_option("--check", sym_check, "Tolerance for symmetry and unitarity")->check(CLI::PositiveNumber);
    add_io(sym_cmd, true);

    double verify_tol = tolerance::kUnitarity;
    std::uint64_t verify_seed = 1;
    auto* verify_cmd = app.add_subcommand("verify", "Run the identity suite on a matrix and report residuals");
    verify_cmd->add_option("--tol", verify_tol, "Residual tolerance")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify_seed, "Seed for the random phases used by the checks");
    add_io(verify_cmd, true);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    const auto load_matrix = [&] {
        const auto j = read_input(o, in);
        if (is_decomposition(j)) return compose(io::decomposition_from_json(j));
        return io::matrix_from_json(j);
    };

    try {
        check_paths(o);

        if (gen->parsed()) {
            emit_matrix(o, out, haar_random(gen_n, gen_seed));
            return kExitOk;
        }

        if (compose_cmd->parsed()) {
            const auto j = read_input(o, in);
            if (is_symmetric_params(j)) {
                emit_matrix(o, out, compose_symmetric(io::symmetric_params_from_json(j)));
            } else if (is_decomposition(j)) {
                emit_matrix(o, out, compose(io::decomposition_from_json(j)));
            } else {
                throw io::FormatError("compose: input is neither a decomposition nor symmetric parameters");
            }
            return kExitOk;
        }

        if (decompose_cmd->parsed()) {
            const auto x = io::matrix_from_json(read_input(o, in));
            auto d = decompose(x, dec_tol);
            if (dec_order == "asc") {
                d = reorder_chain(d, ascending_orders(x.rows()));
            }
            if (dec_gauge == "canonical") {
                d = gauge_fix(d);
            }
            require_within("round-trip", max_norm_diff(compose(d), x), dec_tol);
            emit_json(o, out, io::to_json(d));
            return kExitOk;
        }

        if (reorder_cmd->parsed()) {
            const auto d = io::decomposition_from_json(read_input(o, in));
            const auto seq = parse_target(target, d.ambient_n);
            const auto moved = reorder_chain(d, seq);
            require_within("reorder product", max_norm_diff(compose(moved), compose(d)), 1e-10);
            emit_json(o, out, io::to_json(moved));
            return kExitOk;
        }

        if (invariants_cmd->parsed()) {
            const auto j = read_input(o, in);
            std::optional<Decomposition> d;
            ComplexMatrix x;
            if (is_decomposition(j)) {
                d = io::decomposition_from_json(j);
                x = compose(*d);
            } else {
                x = io::matrix_from_json(j);
            }
            const double defect = unitarity_defect(x);
            if (!(defect <= tolerance::kUnitarity)) {
                throw NotUnitaryError("invariants: input is not unitary", defect);
            }
            Json rep;
            rep["n"] = x.rows();
            rep["independent_phases"] = count_independent_phases(x.rows());
            rep["plaquettes"] = io::to_json(plaquette_table(x));
            rep["triangles"] = io::to_json(triangle_areas(x, inv_tol));
            if (d && (d->ambient_n == 4 || d->ambient_n == 5)) {
                const auto canon = gauge_fix(reorder_chain(*d, ascending_orders(d->ambient_n)));
                rep["omegas"] = omega_from_params(canon).omegas;
            }
            emit_json(o, out, rep);
            return kExitOk;
        }

        if (panel_cmd->parsed()) {
            const auto x = load_matrix();
            if (x.rows() != 4) {
                throw DomainError("panel: needs a 4x4 matrix, got n = " + std::to_string(x.rows()));
            }
            const double defect = unitarity_defect(x);
            if (!(defect <= tolerance::kUnitarity)) {
                throw NotUnitaryError("panel: input is not unitary", defect);
            }
            const auto residuals = panel_relation_residuals(x, panel_vanish);
            const auto basis = basis_solve_n4(x, panel_vanish);
            Json rep;
            rep["lattice"] = io::to_json(panel_lattice(x));
            rep["relation_residuals"] = residuals;
            rep["basis"] = io::to_json(basis);
            emit_json(o, out, rep);
            double worst = 0.0;
            for (double r : residuals) worst = std::max(worst, std::abs(r));
            require_within("panel relation", worst, panel_check);
            if (basis.solvable) {
                require_within("basis reconstruction", basis.max_error(), panel_check);
            }
            return kExitOk;
        }

        if (zt_cmd->parsed()) {
            const auto x = load_matrix();
            const double defect = unitarity_defect(x);
            if (!(defect <= tolerance::kUnitarity)) {
                throw NotUnitaryError("zerotexture: input is not unitary", defect);
            }
            emit_json(o, out, io::to_json(zero_texture_analysis(x, zt_tol, zt_vanish)));
            return kExitOk;
        }

        if (sym_cmd->parsed()) {
            const auto j = read_input(o, in);
            Json rep;
            ComplexMatrix x;
            if (is_symmetric_params(j)) {
                const auto p = io::symmetric_params_from_json(j);
                x = compose_symmetric(p);
                rep["matrix"] = io::to_json(x);
                rep["parameter_count"] = real_parameter_count(p);
                rep["expected_parameter_count"] = sym_param_count(p.n);
            } else {
                x = io::matrix_from_json(j);
            }
            const double sym_defect = max_norm_diff(x, transpose(x));
            const double uni_defect = unitarity_defect(x);
            rep["symmetry_defect"] = sym_defect;
            rep["unitarity_defect"] = uni_defect;
            emit_json(o, out, rep);
            require_within("symmetry", sym_defect, sym_check);
            require_within("unitarity", uni_defect, sym_check);
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            const auto x = load_matrix();
            if (!x.is_square()) {
                throw ShapeError("verify: matrix is not square");
            }
            Json notes = Json::array();
            const auto checks = identity_suite(x, verify_tol, verify_seed, notes);
            Json rep;
            rep["n"] = x.rows();
            Json list = Json::array();
            double worst = 0.0;
            const Check* failed = nullptr;
            for (const auto& c : checks) {
                Json cj;
                cj["name"] = c.name;
                cj["residual"] = c.residual;
                cj["tolerance"] = c.tolerance;
                cj["passed"] = c.residual <= c.tolerance;
                list.push_back(std::move(cj));
                worst = std::max(worst, c.residual);
                if (!(c.residual <= c.tolerance) && !failed) failed = &c;
            }
            rep["checks"] = std::move(list);
            rep["notes"] = std::move(notes);
            rep["max_residual"] = worst;
            rep["passed"] = failed == nullptr;
            emit_json(o, out, rep);
            if (failed) {
                require_within(failed->name.c_str(), failed->residual, failed->tolerance);
            }
            return kExitOk;
        }
    } catch (const NotUnitaryError& e) {
        err << "error: " << e.what() << " (defect " << e.defect() << ")\n";
        return kExitNumeric;
    } catch (const ConsistencyError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace unirec::cli
