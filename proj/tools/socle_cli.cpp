#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "socle/io.hpp"

using nlohmann::json;
using namespace socle;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitPropertyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

json tol_to_json(const Tolerance& t) {
    return json{{"rank_tol", t.rank_tol},
                {"cluster_tol", t.cluster_tol},
                {"residual_tol", t.residual_tol}};
}

Element lookup(const Instance& inst, const std::string& name) {
    const auto it = inst.elements.find(name);
    if (it == inst.elements.end()) throw IoError("instance has no element named '" + name + "'");
    return it->second;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const long v = std::stol(part);
        if (v <= 0) throw IoError("--sizes entries must be positive");
        sizes.push_back(static_cast<std::size_t>(v));
    }
    if (sizes.empty()) throw IoError("--sizes must be nonempty");
    return sizes;
}

std::vector<std::vector<std::size_t>> parse_size_list(const std::string& text) {
    std::vector<std::vector<std::size_t>> out;
    std::stringstream ss(text);
    std::string shape;
    while (std::getline(ss, shape, ';'))
        if (!shape.empty()) out.push_back(parse_sizes(shape));
    if (out.empty()) throw IoError("--sizes must contain at least one shape");
    return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) {
        const std::uint64_t s = std::stoull(text);
        return {s, s};
    }
    const std::uint64_t a = std::stoull(text.substr(0, pos));
    const std::uint64_t b = std::stoull(text.substr(pos + 2));
    if (b < a) throw IoError("--seeds range must be increasing");
    return {a, b};
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << std::endl;
    } else {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
}

struct CheckOutcome {
    json results = json::array();
    bool all_pass = true;

    void add(const std::string& name, bool pass, json detail = {}) {
        json r{{"name", name}, {"pass", pass}};
        if (!detail.is_null()) r["detail"] = std::move(detail);
        results.push_back(std::move(r));
        all_pass = all_pass && pass;
    }
};

std::vector<std::size_t> sorted_desc(std::vector<std::size_t> v) {
    std::sort(v.rbegin(), v.rend());
    return v;
}

void run_spectral_suite(const Instance& inst, std::uint64_t seed, CheckOutcome& out) {
    const auto& alg = inst.algebra;
    const Element a = random_element(alg, seed + 11);
    const std::size_t r = rank_of(a);
    if (a.is_blocks()) {
        const SpectralData sd = spectral_data(a);
        const std::size_t expect = r + (sd.includes_zero ? 1 : 0);
        out.add("multiplicity_bookkeeping", sd.multiplicity_sum() == expect,
                json{{"sum", sd.multiplicity_sum()}, {"expect", expect}});
        const Complex tr = trace(a);
        Complex classical = 0;
        for (const auto& m : a.blocks()) classical += m.trace();
        out.add("trace_cross_check", std::abs(tr - classical) <= 1e-6 * std::max(1.0, a.norm()),
                json{{"spectral", complex_to_json(tr)}, {"classical", complex_to_json(classical)}});
    }
    const Diagonalization diag = socle_decompose(a, seed + 13);
    Element recon = alg->zero_element();
    for (const auto& [lambda, p] : diag.terms) recon = recon + lambda * (diag.u * p);
    const double res = (recon - a).norm();
    out.add("socle_decompose_reconstruction", res <= 1e-6 * std::max(1.0, a.norm()),
            json{{"residual", res}, {"terms", diag.terms.size()}, {"rank", r}});
    out.add("socle_decompose_term_count", diag.terms.size() == r);
    const Element w = vn_regular_witness(a, seed + 17);
    out.add("vn_regular_witness", (a * w * a - a).norm() <= 1e-6 * std::max(1.0, a.norm()));
}

void run_ideals_suite(const Instance& inst, std::uint64_t seed, CheckOutcome& out) {
    const auto& alg = inst.algebra;
    const Element a = random_element(alg, seed + 19);
    const Diagonalization diag = socle_decompose(a, seed + 23);
    bool minimal_ok = true, tensor_ok = true;
    for (const auto& [lambda, p] : diag.terms) {
        if (!is_minimal_projection(p)) minimal_ok = false;
        const TensorModelReport rep = tensor_model_check(p);
        if (!rep.dims_match || !rep.product_rule_holds) tensor_ok = false;
        const IdealCert cert = ideal_basis(p);
        if (!cert.minimal) minimal_ok = false;
    }
    out.add("riesz_projections_minimal", minimal_ok);
    out.add("tensor_model", tensor_ok);
}

void run_wedderburn_suite(const Instance& inst, std::uint64_t seed,
                          const std::vector<std::size_t>& want_sizes, CheckOutcome& out) {
    const WedderburnIso iso = wedderburn_decompose(inst.algebra, seed);
    out.add("sizes_recovered", iso.sizes == sorted_desc(want_sizes),
            json{{"got", iso.sizes}, {"want", sorted_desc(want_sizes)}});
    const Element x = random_element(inst.algebra, seed + 29);
    const Element y = random_element(inst.algebra, seed + 31);
    const double mult_res =
        (iso.map_forward(x * y) - iso.map_forward(x) * iso.map_forward(y)).norm();
    out.add("forward_multiplicative", mult_res <= 1e-6 * std::max(1.0, x.norm() * y.norm()),
            json{{"residual", mult_res}});
    const double rt = (iso.map_backward(iso.map_forward(x)) - x).norm();
    out.add("roundtrip", rt <= 1e-6 * std::max(1.0, x.norm()), json{{"residual", rt}});
}

void run_shoda_suite(const Instance& inst, std::uint64_t seed, CheckOutcome& out) {
    const Element a0 = lookup(inst, "a0");
    const CommutatorMembership mem = in_commutator_space(a0, seed);
    out.add("traceless_membership", mem.member, membership_to_json(mem));
    if (mem.member) {
        const CommutatorCert cert = shoda_socle(a0, seed);
        const std::size_t r = a0.is_blocks() ? rank_of(a0) : cert.rank_x + cert.rank_y;
        json detail{{"residual", cert.residual}, {"rank_x", cert.rank_x}, {"rank_y", cert.rank_y}};
        out.add("shoda_certificate",
                cert.residual <= 1e-6 * std::max(1.0, a0.norm()) &&
                    (!a0.is_blocks() || (cert.rank_x <= r && cert.rank_y <= r)),
                detail);
    }
    // obstruction family on multi-block shapes: (e11, -e11)
    const WedderburnIso iso = wedderburn_decompose(inst.algebra, seed);
    if (iso.sizes.size() >= 2) {
        std::vector<ComplexMatrix> bl;
        for (std::size_t b = 0; b < iso.sizes.size(); ++b)
            bl.push_back(ComplexMatrix::zero(iso.sizes[b], iso.sizes[b]));
        bl[0](0, 0) = 1.0;
        bl[1](0, 0) = -1.0;
        const Element obst = iso.map_backward(Element(iso.target(), std::move(bl)));
        const CommutatorMembership m2 = in_commutator_space(obst, seed);
        out.add("obstruction_rejected", !m2.member, membership_to_json(m2));
    }
}

void run_central_suite(const Instance& inst, std::uint64_t seed, CheckOutcome& out) {
    const EquivalenceReport rep = equivalence_harness(inst.algebra, seed);
    out.add("equivalence_pattern", rep.consistent(), equivalence_to_json(rep));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"socle structure toolkit"};
    app.require_subcommand(1);

    std::string instance_path, element_name, out_path, sizes_text, seeds_text, suite = "all";
    std::uint64_t seed = 0;
    bool scramble = false;

    auto* rank_cmd = app.add_subcommand("rank", "spectral rank of an element");
    auto* trace_cmd = app.add_subcommand("trace", "spectral trace of an element");
    auto* spectrum_cmd = app.add_subcommand("spectrum", "clustered spectrum of an element");
    auto* diag_cmd = app.add_subcommand("diagonalize", "socle diagonalization of an element");
    for (auto* c : {rank_cmd, trace_cmd, spectrum_cmd, diag_cmd}) {
        c->add_option("instance", instance_path)->required();
        c->add_option("element", element_name)->required();
        c->add_option("--seed", seed);
    }

    auto* decompose_cmd = app.add_subcommand("decompose", "Wedderburn decomposition");
    decompose_cmd->add_option("instance", instance_path)->required();
    decompose_cmd->add_option("--seed", seed);
    decompose_cmd->add_option("-o,--output", out_path);

    auto* shoda_cmd = app.add_subcommand("shoda", "commutator factorization");
    shoda_cmd->add_option("instance", instance_path)->required();
    shoda_cmd->add_option("element", element_name)->required();
    shoda_cmd->add_option("--seed", seed);

    auto* ideal_cmd = app.add_subcommand("ideal", "ideal generated by a projection");
    ideal_cmd->add_option("instance", instance_path)->required();
    ideal_cmd->add_option("element", element_name)->required();

    auto* central_cmd = app.add_subcommand("central", "centrality predicates");
    central_cmd->add_option("instance", instance_path)->required();
    central_cmd->add_option("--seed", seed);

    auto* gen_cmd = app.add_subcommand("gen", "emit a seeded instance file");
    gen_cmd->add_option("--sizes", sizes_text)->required();
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_flag("--scramble", scramble);
    gen_cmd->add_option("-o,--output", out_path);

    auto* check_cmd = app.add_subcommand("check", "property sweep");
    check_cmd->add_option("--suite", suite)
        ->check(CLI::IsMember({"spectral", "ideals", "wedderburn", "shoda", "central", "all"}));
    check_cmd->add_option("--seeds", seeds_text)->required();
    check_cmd->add_option("--sizes", sizes_text)->required();
    check_cmd->add_flag("--scramble", scramble);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        const Tolerance tol = tolerance_from_env();
        const double t0 = now_ms();

        if (gen_cmd->parsed()) {
            const Instance inst = gen_instance(parse_sizes(sizes_text), seed, scramble, tol);
            emit(instance_to_json(inst), out_path);
            return kExitPass;
        }

        if (check_cmd->parsed()) {
            const auto [lo, hi] = parse_seed_range(seeds_text);
            const auto shapes = parse_size_list(sizes_text);
            bool all_pass = true;
            for (const auto& shape : shapes) {
                for (std::uint64_t s = lo; s <= hi; ++s) {
                    const Instance inst = gen_instance(shape, s, scramble, tol);
                    CheckOutcome out;
                    if (suite == "spectral" || suite == "all") run_spectral_suite(inst, s, out);
                    if (suite == "ideals" || suite == "all") run_ideals_suite(inst, s, out);
                    if (suite == "wedderburn" || suite == "all")
                        run_wedderburn_suite(inst, s, shape, out);
                    if (suite == "shoda" || suite == "all") run_shoda_suite(inst, s, out);
                    if (suite == "central" || suite == "all") run_central_suite(inst, s, out);
                    json line{{"command", "check"},
                              {"suite", suite},
                              {"sizes", shape},
                              {"seed", s},
                              {"tolerances", tol_to_json(tol)},
                              {"results", out.results},
                              {"pass", out.all_pass},
                              {"wall_ms", now_ms() - t0}};
                    std::cout << line.dump() << "\n";
                    all_pass = all_pass && out.all_pass;
                }
            }
            return all_pass ? kExitPass : kExitPropertyFailed;
        }

        const Instance inst = load_instance(instance_path, tol);

        if (rank_cmd->parsed()) {
            emit(json{{"rank", rank_of(lookup(inst, element_name))}}, "");
            return kExitPass;
        }
        if (trace_cmd->parsed()) {
            Element a = lookup(inst, element_name);
            if (!a.is_blocks()) a = wedderburn_decompose(inst.algebra, seed).map_forward(a);
            emit(json{{"trace", complex_to_json(trace(a))}}, "");
            return kExitPass;
        }
        if (spectrum_cmd->parsed()) {
            const Spectrum sp = spectrum(lookup(inst, element_name));
            json values = json::array();
            for (const auto& [v, c] : sp.values)
                values.push_back(json{{"value", complex_to_json(v)}, {"count", c}});
            emit(json{{"values", values},
                      {"counts_are_multiplicities", sp.counts_are_multiplicities}},
                 "");
            return kExitPass;
        }
        if (diag_cmd->parsed()) {
            const Element a = lookup(inst, element_name);
            const Diagonalization diag = socle_decompose(a, seed);
            json terms = json::array();
            for (const auto& [lambda, p] : diag.terms)
                terms.push_back(json{{"lambda", complex_to_json(lambda)},
                                     {"projection", element_to_json(p)}});
            Element recon = inst.algebra->zero_element();
            for (const auto& [lambda, p] : diag.terms) recon = recon + lambda * (diag.u * p);
            emit(json{{"u", element_to_json(diag.u)},
                      {"terms", terms},
                      {"residual", (recon - a).norm()}},
                 "");
            return kExitPass;
        }
        if (decompose_cmd->parsed()) {
            const WedderburnIso iso = wedderburn_decompose(inst.algebra, seed);
            emit(iso_to_json(iso), out_path);
            return kExitPass;
        }
        if (shoda_cmd->parsed()) {
            const Element a = lookup(inst, element_name);
            try {
                const CommutatorCert cert = shoda_socle(a, seed);
                emit(cert_to_json(cert), "");
                return kExitPass;
            } catch (const NotInCommutatorSpace& e) {
                json traces = json::array();
                for (const Complex& t : e.traces) traces.push_back(complex_to_json(t));
                emit(json{{"member", false}, {"traces", traces}}, "");
                return kExitPropertyFailed;
            }
        }
        if (ideal_cmd->parsed()) {
            const Element p = lookup(inst, element_name);
            const IdealCert cert = ideal_basis(p);
            json j = ideal_cert_to_json(cert);
            if (is_minimal_projection(p)) j["tensor_model"] = tensor_report_to_json(tensor_model_check(p));
            emit(j, "");
            return kExitPass;
        }
        if (central_cmd->parsed()) {
            const EquivalenceReport rep = equivalence_harness(inst.algebra, seed);
            emit(equivalence_to_json(rep), "");
            return rep.consistent() ? kExitPass : kExitPropertyFailed;
        }
        std::cerr << "unknown subcommand\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
