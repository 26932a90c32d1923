#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wmp/almost_sure.hpp"
#include "wmp/combined.hpp"
#include "wmp/io.hpp"
#include "wmp/oracle.hpp"
#include "wmp/strategy.hpp"
#include "wmp/sure.hpp"

#include <map>

namespace py = pybind11;
using namespace wmp;

namespace {

using Names = std::vector<std::string>;

Names region(const Mdp& m, const VertexSet& s) { return m.names_of(s); }

Rational rat(const std::string& s) { return parse_rational(s); }

py::dict sas_dict(const SasResult& r) {
  py::dict d;
  const Mdp& ma = r.mdp_alpha;
  d["degenerate"] = r.degenerate;
  d["l"] = r.l;
  if (!r.degenerate) {
    auto lift = [&](const VertexSet& s) { return ma.names_of(lift_to_root(ma, s)); };
    d["W0"] = lift(r.trace.w0);
    py::list its;
    for (const auto& it : r.trace.iterations) {
      py::dict x;
      x["P"] = lift(it.pos_cpre);
      x["W_sdab"] = lift(it.sdab);
      x["A"] = lift(it.attr);
      x["W"] = lift(it.region);
      its.append(x);
    }
    d["iterations"] = its;
  }
  return d;
}

ClaimKind claim_kind(const std::string& name) {
  static const std::map<std::string, ClaimKind> kinds{
      {"sure-dir-fwmp", ClaimKind::SureDirFwmp},   {"sure-fwmp", ClaimKind::SureFwmp},
      {"as-fwmp", ClaimKind::AlmostSureFwmp},      {"as-buchi", ClaimKind::AlmostSureBuchi},
      {"reach-prob", ClaimKind::ReachProbability}, {"bounded-reach-prob", ClaimKind::BoundedReachProbability},
      {"fwmp-prob", ClaimKind::FwmpProbability}};
  auto it = kinds.find(name);
  if (it == kinds.end()) throw Error("unknown claim '" + name + "'");
  return it->second;
}

}  // namespace

PYBIND11_MODULE(_wmp, mod) {
  mod.doc() = "Window mean-payoff solvers for Markov decision processes";

  py::register_exception<Error>(mod, "WmpError", PyExc_ValueError);
  py::register_exception<StartOutsideRegion>(mod, "StartOutsideRegion", PyExc_ValueError);

  py::class_<Mdp>(mod, "Mdp")
      .def_static("parse", &parse_mdp, py::arg("text"))
      .def_static("load", &parse_mdp_file, py::arg("path"))
      .def_static("chain", [](int m, const std::string& p, const std::string& a, const std::string& b) {
        return make_chain(m, rat(p), rat(a), rat(b));
      }, py::arg("m"), py::arg("p"), py::arg("alpha"), py::arg("beta"))
      .def_property_readonly("num_vertices", &Mdp::num_vertices)
      .def_property_readonly("num_edges", &Mdp::num_edges)
      .def_property_readonly("names", [](const Mdp& m) { return m.names_of(m.all()); })
      .def_property_readonly("p_min", [](const Mdp& m) { return to_string(m.p_min()); })
      .def("to_text", &write_mdp)
      .def("to_json", &write_mdp_json)
      .def("validate", &validate)
      .def("__repr__", [](const Mdp& m) {
        return "<Mdp " + std::to_string(m.num_vertices()) + " vertices, " + std::to_string(m.num_edges()) + " edges>";
      });

  mod.def("sure_good_win", [](const Mdp& m, int l, const std::string& lam) {
    return region(m, sure_good_win(m, l, rat(lam)).region);
  });
  mod.def("sure_dir_fwmp", [](const Mdp& m, int l, const std::string& lam) {
    return region(m, sure_dir_fwmp(m, l, rat(lam)).region);
  });
  mod.def("sure_fwmp", [](const Mdp& m, int l, const std::string& lam) {
    return region(m, sure_fwmp(m, l, rat(lam)).region);
  });
  mod.def("sure_bwmp", [](const Mdp& m, const std::string& lam) { return region(m, sure_bwmp(m, rat(lam)).region); });
  mod.def("bwmp_window_bound", [](const Mdp& m, const std::string& lam) { return bwmp_window_bound(m, rat(lam)); });
  mod.def("almost_sure_fwmp", [](const Mdp& m, int l, const std::string& lam) {
    return region(m, almost_sure_fwmp(m, l, rat(lam)).region);
  });
  mod.def("almost_sure_bwmp", [](const Mdp& m, const std::string& lam) {
    return region(m, almost_sure_bwmp(m, rat(lam)).region);
  });
  mod.def("almost_sure_buchi", [](const Mdp& m, const Names& t) { return region(m, almost_sure_buchi(m, m.set_of(t))); });
  mod.def("mec_decomposition", [](const Mdp& m) {
    std::vector<Names> out;
    for (const auto& c : mec_decomposition(m)) out.push_back(m.names_of(c));
    return out;
  });

  mod.def("sas_fwmp", [](const Mdp& m, int l, const std::string& a, const std::string& b) {
    auto r = sas_fwmp(m, l, rat(a), rat(b));
    return py::make_tuple(region(m, r.region), sas_dict(r));
  });
  mod.def("sas_bwmp", [](const Mdp& m, const std::string& a, const std::string& b) {
    auto r = sas_bwmp(m, rat(a), rat(b));
    return py::make_tuple(region(m, r.region), sas_dict(r));
  });
  mod.def("sls_fwmp", [](const Mdp& m, int l, const std::string& a, const std::string& b) {
    return region(m, sls_fwmp(m, l, rat(a), rat(b)));
  });
  mod.def("sls_bwmp", [](const Mdp& m, const std::string& a, const std::string& b) {
    return region(m, sls_bwmp(m, rat(a), rat(b)));
  });
  mod.def("sure_dirfwmp_pos_reach", [](const Mdp& m, int l, const std::string& a, const Names& t) {
    auto r = sure_dirfwmp_pos_reach(m, l, rat(a), m.set_of(t));
    std::vector<std::tuple<std::string, std::string, bool>> verdicts;
    for (const auto& v : r.verdicts)
      verdicts.emplace_back(m.name(m.edge(v.edge).src), m.name(m.edge(v.edge).dst), v.good);
    return py::make_tuple(region(m, r.region), verdicts);
  });
  mod.def("sure_dirfwmp_as_buchi", [](const Mdp& m, int l, const std::string& a, const Names& t) {
    return region(m, sure_dirfwmp_as_buchi(m, l, rat(a), m.set_of(t)).region);
  });

  mod.def("synthesize", [](const Mdp& m, const std::string& obj, const std::string& start, int l,
                           const std::string& a, const std::string& b, const Names& t, const std::string& eps) {
    const int v = m.vertex_named(start);
    MealyStrategy s;
    if (obj == "sure-fwmp") s = synth_sure_fwmp(m, l, rat(a), v);
    else if (obj == "sdpr") s = synth_sdpr(m, l, rat(a), m.set_of(t), v);
    else if (obj == "sdab") s = synth_sdab(m, l, rat(a), m.set_of(t), v);
    else if (obj == "sas-fwmp") s = synth_sas(m, l, rat(a), rat(b), v);
    else if (obj == "sas-bwmp") s = synth_sas_bwmp(m, rat(a), rat(b), v);
    else if (obj == "sls-fwmp") s = synth_sls(m, l, rat(a), rat(b), rat(eps), v);
    else throw Error("unknown objective '" + obj + "'");
    return write_strategy_json(m, s);
  }, py::arg("m"), py::arg("obj"), py::arg("start"), py::arg("l") = 1, py::arg("alpha") = "0",
     py::arg("beta") = "0", py::arg("target") = Names{}, py::arg("eps") = "1/10");

  mod.def("validate_strategy", [](const Mdp& m, const std::string& strategy, const std::string& start,
                                  const std::string& claim, int l, const std::string& lam, const Names& t,
                                  const std::string& threshold, int steps) {
    Claim c;
    c.kind = claim_kind(claim);
    c.l = l;
    c.lambda = rat(lam);
    c.target = m.set_of(t);
    c.threshold = rat(threshold);
    c.steps = steps;
    auto v = validate_strategy(m, parse_strategy_json(m, strategy), m.vertex_named(start), c);
    py::dict d;
    d["accepted"] = v.accepted;
    d["detail"] = v.detail;
    Names w;
    for (int x : v.witness) w.push_back(m.name(x));
    d["witness"] = w;
    d["probability"] = v.probability ? py::object(py::str(to_string(*v.probability))) : py::object(py::none());
    d["states"] = v.states;
    return d;
  }, py::arg("m"), py::arg("strategy"), py::arg("start"), py::arg("claim"), py::arg("l") = 1,
     py::arg("lam") = "0", py::arg("target") = Names{}, py::arg("threshold") = "1", py::arg("steps") = 0);

  mod.def("eval_lasso", [](const Mdp& m, const std::string& lasso, const std::string& kind, int l,
                           const std::string& lam) {
    static const std::map<std::string, ObjectiveKind> kinds{
        {"dir-fwmp", ObjectiveKind::DirFwmp}, {"fwmp", ObjectiveKind::Fwmp}, {"dir-bwmp", ObjectiveKind::DirBwmp},
        {"bwmp", ObjectiveKind::Bwmp},        {"mp", ObjectiveKind::MeanPayoff}, {"tp", ObjectiveKind::TotalPayoff}};
    auto it = kinds.find(kind);
    if (it == kinds.end()) throw Error("unknown objective '" + kind + "'");
    ObjectiveSpec o;
    o.kind = it->second;
    o.l = l;
    o.lambda = rat(lam);
    return eval_on_lasso(m, parse_lasso(m, lasso), o);
  }, py::arg("m"), py::arg("lasso"), py::arg("kind"), py::arg("l") = 1, py::arg("lam") = "0");

  mod.def("run_oracle_suite", [](std::uint64_t seed, int count) {
    auto r = run_oracle_suite(seed, count);
    py::dict d;
    d["seed"] = r.seed;
    d["count"] = r.count;
    d["matched"] = r.matched;
    d["mismatches"] = r.mismatches;
    return d;
  }, py::arg("seed") = 7, py::arg("count") = 200);

  mod.def("compute_N", [](int n, const std::string& p, const std::string& eps) { return compute_N(n, rat(p), rat(eps)); });
  mod.def("streak_recurrence", [](int m, const std::string& p, int n) {
    return to_string(streak_recurrence(m, rat(p), n));
  });
}
