#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fusionlab/catalog.hpp"
#include "fusionlab/cli.hpp"
#include "fusionlab/groupfile.hpp"
#include "fusionlab/hfree.hpp"
#include "fusionlab/pgroup.hpp"
#include "fusionlab/stellmacher.hpp"
#include "fusionlab/subsystems.hpp"
#include "fusionlab/theorems.hpp"

namespace py = pybind11;
using namespace fusionlab;

namespace {

// pybind11 holders cannot be shared_ptr<const T>.
using PyGroup = std::shared_ptr<FiniteGroup>;
PyGroup out(const GroupPtr& G) { return std::const_pointer_cast<FiniteGroup>(G); }

py::dict check_list(const std::vector<Check>& checks) {
  py::dict d;
  for (const auto& c : checks) d[py::str(c.name)] = c.holds;
  return d;
}

py::dict report_dict(const TheoremReport& r) {
  py::dict d;
  d["theorem"] = std::string(to_string(r.id));
  d["instance"] = r.instance;
  d["p"] = r.p;
  d["hypotheses_hold"] = r.hypotheses_hold;
  d["conclusion_holds"] = r.conclusion_holds;
  d["contradiction"] = r.contradiction();
  d["hypotheses"] = check_list(r.hypotheses);
  d["conclusions"] = check_list(r.conclusions);
  d["diagnostics"] = r.diagnostics;
  if (r.W) d["W"] = *r.W;
  return d;
}

GroupPtr hgroup(const std::string& h) {
  if (h == "sigma4") return catalog_group("S4");
  if (h == "qd3") return qd_group(3);
  return load_group(h);
}

}  // namespace

PYBIND11_MODULE(fusionlab, m) {
  m.doc() = "Fusion systems of finite groups";

  py::exception<Error>(m, "FusionlabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      auto cls = py::module_::import("fusionlab").attr("FusionlabError");
      auto exc = cls(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(cls.ptr(), exc.ptr());
    }
  });

  py::class_<FiniteGroup, PyGroup>(m, "Group")
      .def_property_readonly("name", &FiniteGroup::name)
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("degree", &FiniteGroup::degree)
      .def("whole", [](const PyGroup& G) { return whole_group(G); })
      .def("subgroup", [](const PyGroup& G, const std::string& spec) { return parse_subgroup_spec(G, spec); },
           py::arg("spec"))
      .def("sylow", [](const PyGroup& G, unsigned p) { return sylow(G, p); }, py::arg("p"))
      .def("subgroup_count", [](const PyGroup& G) { return subgroup_lattice(G).size(); })
      .def("to_text", [](const PyGroup& G) { return write_group_text(*G); })
      .def("__repr__", [](const PyGroup& G) { return "<Group " + G->name() + " of order " + std::to_string(G->order()) + ">"; });

  py::class_<Subgroup>(m, "Subgroup")
      .def_property_readonly("order", &Subgroup::order)
      .def_property_readonly("elements", &Subgroup::elements)
      .def_property_readonly("group", [](const Subgroup& H) { return out(H.parent()); })
      .def("contains", &Subgroup::contains)
      .def("issubset", &Subgroup::subset_of)
      .def("__eq__", [](const Subgroup& a, const Subgroup& b) { return a == b; })
      .def("__hash__", [](const Subgroup& H) { return H.bits().hash(); })
      .def("__repr__", [](const Subgroup& H) { return "<Subgroup " + describe_subgroup(H) + ">"; })
      .def("__str__", &describe_subgroup);

  m.def("catalog", &catalog_names, "names of the built-in groups");
  m.def("catalog_group", [](const std::string& name) { return out(catalog_group(name)); }, py::arg("name"));
  m.def("load_group", [](const std::string& arg) { return out(load_group(arg)); }, py::arg("path_or_catalog"),
        "a group file path or cat:NAME");
  m.def("parse_group", [](const std::string& text) { return out(parse_group_text(text)); }, py::arg("text"));
  m.def("qd_group", [](unsigned p) { return out(qd_group(p)); }, py::arg("p"));
  m.def("is_isomorphic", [](const PyGroup& a, const PyGroup& b) { return is_isomorphic(a, b).isomorphic; });
  m.def("set_limits", [](std::size_t order, std::size_t aut) {
    RunConfig c;
    c.order_cap = order;
    c.aut_cap = aut;
    apply_limits(c);
  }, py::arg("order") = 1000, py::arg("automorphisms") = 256);

  m.def("thompson", [](const Subgroup& S, unsigned p) {
    auto t = thompson_data(S, p);
    py::dict d;
    d["J"] = t.J;
    d["A"] = t.A;
    d["B"] = t.B;
    d["max_abelian_order"] = t.max_abelian_order;
    d["max_abelian_subgroups"] = t.max_abelian_subgroups;
    return d;
  }, py::arg("S"), py::arg("p"));

  py::class_<FusionSystem>(m, "FusionSystem")
      .def_static("realize", [](const PyGroup& G, unsigned p) { return FusionSystem::realize(G, p); },
                  py::arg("G"), py::arg("p"))
      .def_static("inner", &FusionSystem::inner, py::arg("S"), py::arg("p"))
      .def_property_readonly("p", &FusionSystem::p)
      .def_property_readonly("S", &FusionSystem::S)
      .def_property_readonly("name", &FusionSystem::name)
      .def("subgroups", &FusionSystem::subgroups)
      .def("morphism_count", &FusionSystem::morphism_count)
      .def("hom_count", [](const FusionSystem& F, const Subgroup& P, const Subgroup& R) {
        return F.hom_set(P, R).size();
      })
      .def("aut_order", [](const FusionSystem& F, const Subgroup& Q) { return F.aut(Q).size(); })
      .def("conjugacy_class", &FusionSystem::conjugacy_class)
      .def("same_morphisms", &FusionSystem::same_morphisms)
      .def("verify_axioms", [](const FusionSystem& F) {
        auto r = verify_axioms(F);
        py::dict d;
        d["ok"] = r.ok;
        d["failed"] = r.failed;
        d["detail"] = r.detail;
        return d;
      })
      .def("essentials", [](const FusionSystem& F) { return essential_subgroups(F).all; })
      .def("profile", [](const FusionSystem& F, const Subgroup& Q) {
        auto pr = classify_subgroup(F, Q);
        py::dict d;
        d["fully_normalized"] = pr.fully_normalized;
        d["fully_centralized"] = pr.fully_centralized;
        d["centric"] = pr.centric;
        d["radical"] = pr.radical;
        d["essential"] = pr.essential;
        d["class_size"] = pr.class_size;
        d["aut_order"] = pr.aut_order;
        d["out_order"] = pr.out_order;
        return d;
      })
      .def("o_p", &o_p_of_F)
      .def("is_normal", [](const FusionSystem& F, const Subgroup& W) { return is_normal_in_F(F, W).normal; })
      .def("normalizer", &normalizer_system)
      .def("centralizer", [](const FusionSystem& F, const Subgroup& Q) {
        return centralizer_like_system(F, Q, SubsystemKind::Centralizer);
      })
      .def("is_h_free", [](const FusionSystem& F, const std::string& h) { return is_fusion_H_free(F, hgroup(h)).free; },
           py::arg("h"), "h is sigma4, qd3 or a group file");

  m.def("compute_w", [](const PyGroup& G, unsigned p, bool use_catalog) {
    auto S = is_p_group(G->order(), p) ? whole_group(G) : sylow(G, p);
    auto fam = canonical_family(S, p, {}, use_catalog);
    auto w = compute_W_iterative(fam);
    py::dict d;
    d["W"] = w.W_iter;
    d["W_oneshot"] = w.W_oneshot;
    d["chain_length"] = w.steps.size();
    d["admitted"] = fam.admitted().size();
    d["members"] = fam.members.size();
    d["characteristic"] = is_characteristic(w.W_iter, S);
    return d;
  }, py::arg("G"), py::arg("p"), py::arg("catalog") = true);

  m.def("verify", [](const std::string& theorem, const PyGroup& G, unsigned p) {
    auto id = parse_theorem_id(theorem);
    if (!id) throw Error(ErrorCode::ParseError, "unknown theorem '" + theorem + "'");
    switch (*id) {
      case TheoremId::T1: return report_dict(verify_theorem_1(FusionSystem::realize(G, p)));
      case TheoremId::T2: return report_dict(verify_theorem_2(FusionSystem::realize(G, p)));
      case TheoremId::T3: return report_dict(verify_theorem_3(FusionSystem::realize(G, p)));
      case TheoremId::Frobenius: return report_dict(frobenius_check(G, p));
      case TheoremId::Thompson: return report_dict(thompson_group_check(G, p));
    }
    return py::dict();
  }, py::arg("theorem"), py::arg("G"), py::arg("p"));
}
