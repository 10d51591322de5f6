// Python bindings for the main operations: catalogs, canonical forms,
// census invariants and resolvability. Designs cross the boundary in the
// text format used everywhere else.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sts21/analysis.hpp"
#include "sts21/assembler.hpp"
#include "sts21/canonical.hpp"
#include "sts21/catalog.hpp"
#include "sts21/design.hpp"
#include "sts21/doublecount.hpp"

namespace py = pybind11;
using namespace sts21;

namespace {

ParsedDesign parse(const std::string& text) { return parse_design(text); }

canon::CanonicalRecord canon_of(const std::string& text) {
    auto parsed = parse(text);
    if (parsed.groups) {
        TransversalDesign td;
        td.groups = *parsed.groups;
        td.blocks = parsed.system.blocks;
        return canon::canonical_form(td);
    }
    return canon::canonical_form(parsed.system);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "STS(21) + sub-TD(3,6) classification toolkit";

    m.def("enumerate_sts9", [](int support_size) {
        Mask support = (1u << support_size) - 1u;
        std::vector<std::string> out;
        for (const auto& ts : catalog::enumerate_sts9(support)) out.push_back(format_design(ts));
        return out;
    }, py::arg("support_size") = 9,
       "All labeled Steiner triple systems on the first 7 or 9 points, in text format.");

    m.def("sts9_with_block_count", [](int a, int b, int c) {
        auto fam = catalog::build_sts9_family(0x1FFu);
        return fam.with_block(Triple(a, b, c)).size();
    }, "Number of STS(9) containing the given block.");

    m.def("td36_main_classes", [] {
        auto cat = catalog::enumerate_td_main_classes(6, assembler::Frame::petals());
        py::list out;
        for (std::size_t i = 0; i < cat.representatives.size(); ++i) {
            py::dict d;
            d["design"] = format_design(cat.representatives[i]);
            d["class_size"] = cat.class_sizes[i];
            d["autoparatopisms"] = cat.paratopism_stab[i];
            out.append(d);
        }
        return out;
    }, "The 12 main classes of order-6 latin squares as transversal designs.");

    m.def("canonical_form", [](const std::string& text) {
        auto rec = canon_of(text);
        return py::make_tuple(rec.certificate, rec.aut_order, rec.cert_hash());
    }, "(certificate, aut_order, cert_hash) of a design given in text format.");

    m.def("are_isomorphic", [](const std::string& a, const std::string& b) {
        return canon_of(a).certificate == canon_of(b).certificate;
    });

    m.def("validate", [](const std::string& text) {
        auto parsed = parse(text);
        ValidationReport rep;
        if (parsed.groups) {
            TransversalDesign td;
            td.groups = *parsed.groups;
            td.blocks = parsed.system.blocks;
            rep = validate_td(td);
        } else {
            rep = validate_sts(parsed.system);
        }
        return py::make_tuple(rep.ok, rep.summary());
    }, "(ok, summary) for a design in text format.");

    m.def("flower_census", [](const std::string& text) {
        auto sys = parse(text).system;
        auto flowers = assembler::find_flowers(sys);
        auto [sigma, supports] = assembler::count_sub_sts9(sys);
        return py::make_tuple(int(flowers.size()), sigma);
    }, "(tau6, sigma9) of an STS(21) in text format.");

    m.def("is_resolvable", [](const std::string& text) {
        return analysis::is_resolvable(parse(text).system);
    });

    m.def("total_flower_td_pairs", [] {
        return doublecount::total_flower_td_pairs().str();
    }, "The closed-formula double count, as a decimal string.");

    m.def("expected_weighted_sum", [] {
        return doublecount::expected_weighted_sum().str();
    }, "Sum of tau6 * 21!/|Aut| over the published census, as a decimal string.");

    m.attr("EXPECTED_CLASSES") = doublecount::kExpectedClasses;
    m.attr("EXPECTED_RESOLVABLE") = doublecount::kExpectedResolvable;
}
