// pybind11 bindings: thin wrappers over the core library that return the same
// JSON documents the command-line tool emits.
#include <pybind11/pybind11.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "primpair/criteria.hpp"
#include "primpair/gf.hpp"
#include "primpair/intnum.hpp"
#include "primpair/report.hpp"
#include "primpair/verify.hpp"

namespace py = pybind11;
using namespace primpair;

namespace {

gf::FieldCtx field_from(u64 q, unsigned m, const std::string& modulus_str) {
    auto pp = intnum::as_prime_power(q);
    if (!pp) throw std::invalid_argument("q must be a prime power");
    if (modulus_str.empty()) return gf::build_field(pp->p, pp->s, m);
    return gf::build_field(pp->p, pp->s, m, gf::coeffs_from_string(modulus_str));
}

gf::FieldElem elem_from(const gf::FieldCtx& F, const std::string& s) {
    if (s.find(',') != std::string::npos) return F.from_string(s);
    size_t used = 0;
    u64 v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument("cannot parse field element: " + s);
    if (v >= F.p)
        throw std::invalid_argument(
            "bare residue must be below the characteristic; pass a full coefficient vector");
    return F.from_const(v);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

std::array<gf::FieldElem, 3> triple_from(const gf::FieldCtx& F, const std::string& s) {
    std::vector<std::string> parts =
        s.find(':') != std::string::npos ? split_on(s, ':') : split_on(s, ',');
    if (parts.size() != 3) throw std::invalid_argument("expected three coefficients");
    return {elem_from(F, parts[0]), elem_from(F, parts[1]), elem_from(F, parts[2])};
}

constexpr auto kJson = report::Format::json;

}  // namespace

PYBIND11_MODULE(_primpair, mod) {
    mod.doc() = "finite-field toolkit for primitive-pair existence criteria (JSON core)";

    mod.def(
        "factor_json",
        [](const std::string& n) {
            return report::emit_factorization(intnum::factorize(parse_u128(n)), kJson);
        },
        py::arg("n"), "factor a nonnegative integer given as a decimal string");

    mod.def(
        "bound_json",
        [](u64 q, unsigned m) { return report::emit_bound(criteria::base_condition(q, m), kJson); },
        py::arg("q"), py::arg("m"), "evaluate the base inequality");

    mod.def(
        "sieve_json",
        [](u64 q, unsigned m, int core) {
            criteria::SievePlan plan =
                core < 0 ? criteria::best_sieve(q, m) : criteria::sieve_plan(q, m, unsigned(core));
            return report::emit_sieve(plan, kJson);
        },
        py::arg("q"), py::arg("m"), py::arg("core") = -1,
        "evaluate a sieve plan; core < 0 picks the best core size");

    mod.def(
        "tables_json",
        [](int which) {
            std::vector<criteria::TableRow> rows;
            if (which != 2)
                for (auto& r : criteria::table1()) rows.push_back(std::move(r));
            if (which != 1)
                for (auto& r : criteria::table2()) rows.push_back(std::move(r));
            return report::emit_table(rows, kJson);
        },
        py::arg("which") = 0, py::call_guard<py::gil_scoped_release>(),
        "recompute the published sieve tables (1, 2, or 0 for both)");

    mod.def(
        "classify_json",
        [](u64 q, unsigned m, u64 guard, unsigned workers) {
            return report::emit_classify(verify::classify(q, m, guard, workers), kJson);
        },
        py::arg("q"), py::arg("m"), py::arg("guard") = u64(1) << 28, py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>(), "run the full decision pipeline");

    mod.def(
        "search_json",
        [](u64 q, unsigned m, const std::string& modulus, const std::string& coeffs,
           const std::string& beta, bool include_inadmissible, unsigned workers, u64 guard) {
            gf::FieldCtx F = field_from(q, m, modulus);
            verify::SearchOptions so;
            so.workers = workers;
            so.guard = guard;
            so.include_inadmissible = include_inadmissible;
            if (!coeffs.empty()) so.triple = triple_from(F, coeffs);
            if (!beta.empty()) so.beta = elem_from(F, beta);
            return report::emit_pair(verify::search_pair(F, so), kJson);
        },
        py::arg("q"), py::arg("m"), py::arg("modulus") = "", py::arg("coeffs") = "",
        py::arg("beta") = "", py::arg("include_inadmissible") = false, py::arg("workers") = 0,
        py::arg("guard") = u64(1) << 28, py::call_guard<py::gil_scoped_release>(),
        "exhaustive witness search");

    mod.def(
        "charsum_json",
        [](u64 q, unsigned m, bool full, const std::string& modulus) {
            gf::FieldCtx F = field_from(q, m, modulus);
            return report::emit_charsum(verify::charsum_suite(F, full), kJson);
        },
        py::arg("q"), py::arg("m"), py::arg("full") = false, py::arg("modulus") = "",
        py::call_guard<py::gil_scoped_release>(), "character-sum property checks");

    mod.def(
        "default_modulus",
        [](u64 p, unsigned degree) {
            return gf::coeffs_to_string(gf::default_modulus(p, degree));
        },
        py::arg("p"), py::arg("degree"),
        "lexicographically smallest monic primitive polynomial, constant term first");
}
