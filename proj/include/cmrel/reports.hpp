#pragma once

// JSON serializers for the library's report types.  Field names and order
// are part of the output contract (golden files and scripted consumers), so
// they are kept stable here and nowhere else.

#include <cmrel/bounds.hpp>
#include <cmrel/moduli.hpp>
#include <cmrel/quadnt.hpp>
#include <cmrel/relations.hpp>

#include <json.hpp>

#include <cstdlib>
#include <string>
#include <vector>

namespace cmrel {

using ordered_json = nlohmann::ordered_json;

namespace detail {

// Arbitrary-precision values ride as decimal strings once they outgrow long.
inline ordered_json json_int(const mpz_class& z) {
    if (mpz_fits_slong_p(z.get_mpz_t())) return static_cast<long>(z.get_si());
    return z.get_str();
}

// Clamp reals to the 12-significant-digit output contract before they enter
// a JSON document.
inline double round12(double x) { return std::strtod(real12(x).c_str(), nullptr); }

}  // namespace detail

inline ordered_json report_json(const NontrivialityReport& rep) {
    ordered_json j;
    j["case"] = rep.case_name;
    j["remainder"] = rep.reduction.remainder.to_string();
    ordered_json coeffs = ordered_json::array();
    for (const auto& [m, c] : rep.coefficient_table) {
        ordered_json e;
        e["monomial"] = mono4_str(m);
        e["coefficient"] = c.to_string();
        coeffs.push_back(std::move(e));
    }
    j["coefficients"] = std::move(coeffs);
    j["symbolically_nonzero"] = rep.symbolically_nonzero;
    if (rep.witness) {
        ordered_json w;
        ordered_json consts = ordered_json::object();
        for (const auto& [name, val] : rep.witness->constants)
            consts[name] = val.get_str();
        w["constants"] = std::move(consts);
        ordered_json pt = ordered_json::array();
        for (const mpq_class& q : rep.witness->point) pt.push_back(q.get_str());
        w["point"] = std::move(pt);
        w["value"] = rep.witness->value.get_str();
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    j["trials"] = rep.trials;
    j["seed"] = rep.seed;
    return j;
}

inline ordered_json report_json(const PSetResult& ps) {
    ordered_json j;
    j["d0"] = ps.d0.value;
    j["dj"] = ps.dj.value;
    j["primes"] = ps.primes;
    ordered_json w = ordered_json::object();
    for (const auto& [p, wit] : ps.witnesses) {
        ordered_json e;
        e["x"] = wit.x;
        e["m"] = wit.m;
        w[std::to_string(p)] = std::move(e);
    }
    j["witnesses"] = std::move(w);
    return j;
}

inline ordered_json report_json(const LvResult& lv) {
    ordered_json j;
    j["l"] = lv.l;
    j["verdict"] = lv_verdict_token(lv.verdict);
    ordered_json d = ordered_json::object();
    if (lv.power_k) d["power_k"] = *lv.power_k;
    if (lv.witness) {
        ordered_json w;
        w["x"] = lv.witness->x;
        w["m"] = lv.witness->m;
        d["witness"] = std::move(w);
    }
    if (lv.kronecker_pair)
        d["kronecker_pair"] = {lv.kronecker_pair->first, lv.kronecker_pair->second};
    j["details"] = std::move(d);
    return j;
}

inline ordered_json report_json(const GZReport& rep) {
    ordered_json j;
    j["d1"] = rep.d1.value;
    j["d2"] = rep.d2.value;
    j["integer"] = rep.rounded_integer.get_str();
    j["residual"] = detail::round12(rep.residual.to_double());
    j["exponent"] = rep.exponent.get_str();
    ordered_json f = ordered_json::array();
    for (const auto& [p, e] : rep.factorization.factors)
        f.push_back({detail::json_int(p), e});
    j["factors"] = std::move(f);
    j["cofactor"] = detail::json_int(rep.factorization.cofactor);
    ordered_json crit = ordered_json::array();
    for (const auto& [l, v] : rep.criterion) {
        ordered_json c;
        c["l"] = l;
        c["verdict"] = lv_verdict_token(v);
        crit.push_back(std::move(c));
    }
    j["criterion"] = std::move(crit);
    return j;
}

inline ordered_json report_json(const WeilHeightResult& res) {
    ordered_json j;
    j["d"] = res.d.value;
    j["degree"] = res.degree;
    j["height"] = detail::round12(res.height.to_double());
    ordered_json mags = ordered_json::array();
    for (const BigFloat& m : res.conjugate_magnitudes)
        mags.push_back(detail::round12(m.to_double()));
    j["conjugates"] = std::move(mags);
    return j;
}

inline ordered_json scan_json(const std::vector<ScanRecord>& rows) {
    ordered_json arr = ordered_json::array();
    for (const ScanRecord& r : rows) {
        ordered_json j;
        j["d"] = r.d;
        j["h_class"] = r.class_number;
        j["pset_size"] = r.pset_size;
        j["weil_height"] = detail::round12(r.weil_height);
        j["htbound_rhs"] = detail::round12(r.htbound_rhs);
        j["isogeny_rhs"] = detail::round12(r.isogeny_rhs);
        j["conjecture_rhs"] = detail::round12(r.conjecture_rhs);
        j["ht_ok"] = r.ht_ok;
        j["conj_ok"] = r.conj_ok;
        j["status"] = r.status;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace cmrel
