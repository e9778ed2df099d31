#include "socle/io.hpp"

#include <cstdlib>
#include <fstream>
#include <random>

using nlohmann::json;

namespace socle {

namespace {

double env_or(const char* name, double fallback) {
    const char* raw = std::getenv(name);
    if (!raw || !*raw) return fallback;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0')
        throw IoError(std::string(name) + ": cannot parse '" + raw + "' as a number");
    return v;
}

}  // namespace

Tolerance tolerance_from_env(Tolerance base) {
    base.rank_tol = env_or("SOCLE_TOL_RANK", base.rank_tol);
    base.cluster_tol = env_or("SOCLE_TOL_CLUSTER", base.cluster_tol);
    base.residual_tol = env_or("SOCLE_TOL_RESIDUAL", base.residual_tol);
    base.validate();
    return base;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw IoError("complex number must be a [re, im] pair, got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw IoError("matrix must be a nonempty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw IoError("matrix rows must all have length " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
    }
    return m;
}

json element_to_json(const Element& e) {
    json out;
    if (e.is_blocks()) {
        json blocks = json::array();
        for (const auto& b : e.blocks()) blocks.push_back(matrix_to_json(b));
        out["blocks"] = std::move(blocks);
    } else {
        json coords = json::array();
        for (const Complex& c : e.coords()) coords.push_back(complex_to_json(c));
        out["coords"] = std::move(coords);
    }
    return out;
}

Element element_from_json(const AlgebraPtr& alg, const json& j) {
    if (j.contains("blocks")) {
        if (!alg->is_blocks()) throw IoError("element has blocks but the algebra does not");
        const json& jb = j["blocks"];
        const auto& sizes = alg->blocks_pres().sizes;
        if (!jb.is_array() || jb.size() != sizes.size())
            throw IoError("element must have " + std::to_string(sizes.size()) + " blocks");
        std::vector<ComplexMatrix> blocks;
        for (std::size_t b = 0; b < sizes.size(); ++b) {
            ComplexMatrix m = matrix_from_json(jb[b]);
            if (m.rows() != sizes[b] || m.cols() != sizes[b])
                throw IoError("block " + std::to_string(b) + " must be " +
                              std::to_string(sizes[b]) + "x" + std::to_string(sizes[b]));
            blocks.push_back(std::move(m));
        }
        return Element(alg, std::move(blocks));
    }
    if (j.contains("coords")) {
        const json& jc = j["coords"];
        if (!jc.is_array() || jc.size() != alg->dim())
            throw IoError("element coords must have length " + std::to_string(alg->dim()));
        std::vector<Complex> coords;
        for (const auto& c : jc) coords.push_back(complex_from_json(c));
        return Element::from_coords(alg, coords);
    }
    throw IoError("element needs either 'blocks' or 'coords'");
}

Instance parse_instance(const json& j, const Tolerance& tol) {
    if (!j.is_object() || !j.contains("algebra")) throw IoError("instance needs an 'algebra' key");
    const json& ja = j["algebra"];
    const std::string kind = ja.value("kind", "");
    Instance inst;
    if (kind == "blocks") {
        if (!ja.contains("sizes") || !ja["sizes"].is_array())
            throw IoError("blocks algebra needs a 'sizes' array");
        std::vector<std::size_t> sizes;
        for (const auto& s : ja["sizes"]) {
            if (!s.is_number_integer() || s.get<long long>() <= 0)
                throw IoError("block sizes must be positive integers");
            sizes.push_back(s.get<std::size_t>());
        }
        inst.algebra = Algebra::blocks(sizes, tol);
    } else if (kind == "structure") {
        StructurePresentation pres;
        pres.dim = ja.value("dim", std::size_t{0});
        if (pres.dim == 0) throw IoError("structure algebra needs a positive 'dim'");
        const std::size_t d = pres.dim;
        const json& table = ja.at("table");
        if (!table.is_array() || table.size() != d)
            throw IoError("structure table must be a d x d x d array");
        pres.table.resize(d * d * d);
        for (std::size_t i = 0; i < d; ++i) {
            if (!table[i].is_array() || table[i].size() != d)
                throw IoError("structure table must be a d x d x d array");
            for (std::size_t jj = 0; jj < d; ++jj) {
                const json& row = table[i][jj];
                if (!row.is_array() || row.size() != d)
                    throw IoError("structure table must be a d x d x d array");
                for (std::size_t k = 0; k < d; ++k)
                    pres.table[(i * d + jj) * d + k] = complex_from_json(row[k]);
            }
        }
        const json& unit = ja.at("unit");
        if (!unit.is_array() || unit.size() != d)
            throw IoError("structure unit must have length d");
        for (const auto& c : unit) pres.unit.push_back(complex_from_json(c));
        inst.algebra = Algebra::structure(std::move(pres), tol);
    } else {
        throw IoError("algebra kind must be 'blocks' or 'structure'");
    }

    if (j.contains("elements")) {
        if (!j["elements"].is_object()) throw IoError("'elements' must be a name -> payload map");
        for (const auto& [name, payload] : j["elements"].items())
            inst.elements.emplace(name, element_from_json(inst.algebra, payload));
    }
    return inst;
}

Instance load_instance(const std::string& path, const Tolerance& tol) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError("malformed JSON in " + path + ": " + e.what());
    }
    return parse_instance(j, tol);
}

json instance_to_json(const Instance& inst) {
    json j;
    const auto& alg = inst.algebra;
    if (alg->is_blocks()) {
        j["algebra"] = {{"kind", "blocks"}, {"sizes", alg->blocks_pres().sizes}};
    } else {
        const auto& pres = alg->structure_pres();
        const std::size_t d = pres.dim;
        json table = json::array();
        for (std::size_t i = 0; i < d; ++i) {
            json plane = json::array();
            for (std::size_t jj = 0; jj < d; ++jj) {
                json row = json::array();
                for (std::size_t k = 0; k < d; ++k)
                    row.push_back(complex_to_json(pres.table[(i * d + jj) * d + k]));
                plane.push_back(std::move(row));
            }
            table.push_back(std::move(plane));
        }
        json unit = json::array();
        for (const Complex& c : pres.unit) unit.push_back(complex_to_json(c));
        j["algebra"] = {{"kind", "structure"},
                        {"dim", d},
                        {"table", std::move(table)},
                        {"unit", std::move(unit)}};
    }
    if (!inst.elements.empty()) {
        json elems;
        for (const auto& [name, e] : inst.elements) elems[name] = element_to_json(e);
        j["elements"] = std::move(elems);
    }
    return j;
}

json cert_to_json(const CommutatorCert& cert) {
    return json{{"x", element_to_json(cert.x)},
                {"y", element_to_json(cert.y)},
                {"target", element_to_json(cert.target)},
                {"residual", cert.residual},
                {"rank_x", cert.rank_x},
                {"rank_y", cert.rank_y}};
}

json membership_to_json(const CommutatorMembership& mem) {
    json traces = json::array();
    for (const Complex& t : mem.traces) traces.push_back(complex_to_json(t));
    return json{{"member", mem.member}, {"traces", std::move(traces)}};
}

json iso_to_json(const WedderburnIso& iso) {
    json units = json::array();
    for (const auto& mu : iso.blocks) {
        json coords = json::array();
        for (const auto& u : mu.units) coords.push_back(element_to_json(u));
        units.push_back(json{{"n", mu.n}, {"units", std::move(coords)}});
    }
    return json{{"sizes", iso.sizes},
                {"unit_preimages", std::move(units)},
                {"forward", matrix_to_json(iso.forward)},
                {"backward", matrix_to_json(iso.backward)}};
}

json spectral_data_to_json(const SpectralData& sd) {
    json distinct = json::array();
    for (const auto& e : sd.distinct)
        distinct.push_back(json{{"lambda", complex_to_json(e.lambda)},
                                {"multiplicity", e.multiplicity}});
    return json{{"distinct", std::move(distinct)}, {"includes_zero", sd.includes_zero}};
}

json ideal_cert_to_json(const IdealCert& cert) {
    json j{{"dim", cert.basis.dim()}, {"minimal", cert.minimal}};
    if (cert.block_index) j["block_index"] = *cert.block_index;
    return j;
}

json tensor_report_to_json(const TensorModelReport& rep) {
    return json{{"dim_left", rep.dim_left},
                {"dim_right", rep.dim_right},
                {"dim_ideal", rep.dim_ideal},
                {"dims_match", rep.dims_match},
                {"product_rule_holds", rep.product_rule_holds},
                {"max_product_residual", rep.max_product_residual}};
}

json predicate_to_json(const PredicateResult& pr) {
    json witnesses = json::array();
    for (const auto& w : pr.witnesses) witnesses.push_back(element_to_json(w));
    return json{{"holds", pr.holds}, {"witnesses", std::move(witnesses)}};
}

json equivalence_to_json(const EquivalenceReport& rep) {
    return json{{"central", predicate_to_json(rep.central)},
                {"square_zero", predicate_to_json(rep.square_zero)},
                {"corner_rank", predicate_to_json(rep.corner_rank)},
                {"commutators_trivial", predicate_to_json(rep.commutators_trivial)},
                {"extremal_lower", predicate_to_json(rep.extremal_lower)},
                {"extremal_upper", predicate_to_json(rep.extremal_upper)},
                {"block_count", rep.block_count},
                {"lower_family_consistent", rep.lower_family_consistent},
                {"upper_matches_single_block", rep.upper_matches_single_block},
                {"consistent", rep.consistent()},
                {"mismatches", rep.mismatches}};
}

Instance gen_instance(const std::vector<std::size_t>& sizes, std::uint64_t seed, bool scramble,
                      const Tolerance& tol) {
    const AlgebraPtr blk = Algebra::blocks(sizes, tol);
    const std::size_t d = blk->dim();

    // Seeded dense element, plus a per-block traceless variant.
    const Element a_blocks = random_element(blk, seed + 1);
    std::vector<ComplexMatrix> traceless = a_blocks.blocks();
    for (auto& m : traceless) {
        const Complex tr = m.trace();
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= tr / static_cast<double>(m.rows());
    }
    const Element a0_blocks(blk, std::move(traceless));

    Instance inst;
    if (!scramble) {
        inst.algebra = blk;
        inst.elements.emplace("a", a_blocks);
        inst.elements.emplace("a0", a0_blocks);
        return inst;
    }

    // Random change of basis f_j = sum_i T_ij e_i; re-derive structure
    // constants, the unit, and the element coordinates in the new basis
    // (coordinate vectors transform by T^-1).
    std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dull);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ComplexMatrix t(d, d);
    std::optional<ComplexMatrix> t_inv;
    do {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) t(i, j) = Complex(unif(rng), unif(rng));
        t_inv = inverse(t, tol);
    } while (!t_inv);

    auto column = [&](std::size_t j) {
        std::vector<Complex> c(d);
        for (std::size_t i = 0; i < d; ++i) c[i] = t(i, j);
        return c;
    };
    auto to_new_basis = [&](const std::vector<Complex>& old) {
        std::vector<Complex> c(d);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l) c[k] += (*t_inv)(k, l) * old[l];
        return c;
    };

    StructurePresentation pres;
    pres.dim = d;
    pres.table.resize(d * d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const auto prod = to_new_basis(blk->multiply_coords(column(i), column(j)));
            for (std::size_t k = 0; k < d; ++k) pres.table[(i * d + j) * d + k] = prod[k];
        }
    pres.unit = to_new_basis(blk->unit().coords());
    inst.algebra = Algebra::structure(std::move(pres), tol);

    inst.elements.emplace("a", Element::from_coords(inst.algebra, to_new_basis(a_blocks.coords())));
    inst.elements.emplace("a0",
                          Element::from_coords(inst.algebra, to_new_basis(a0_blocks.coords())));
    return inst;
}

}  // namespace socle
