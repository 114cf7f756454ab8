#pragma once

// Verdict reports: every check of a document with its embedded witnesses, in
// a deterministic JSON layout, and an audit that re-verifies those witnesses
// against the document without rerunning the decision procedures.

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "constant_actions.hpp"
#include "geometry.hpp"
#include "json_io.hpp"
#include "tameness.hpp"

namespace tameram {

struct RunOptions {
  std::vector<std::string> only;  // empty: the document's own checks
  bool timing = false;
  std::string digest;
};

namespace report_detail {

inline Json optional_matrix(const std::optional<Matrix>& m) { return m ? matrix_json(*m) : Json(nullptr); }
inline Json optional_vector(const std::optional<Matrix>& m) { return m ? vector_json(*m) : Json(nullptr); }

inline Json labels(const FiniteGroup& g, const std::vector<std::size_t>& elems) {
  Json out = Json::array();
  for (auto x : elems) out.push_back(g.label(x));
  return out;
}

inline Json total_integral_section(const Instance& in) {
  const auto& b = in.action;
  const auto ti = total_integral(b);
  Json out{{"tame", ti.tame()},
           {"unknowns", ti.unknowns},
           {"equations", ti.equations},
           {"alpha", optional_matrix(ti.alpha)},
           {"certificate", optional_matrix(ti.certificate)}};
  Json reynolds = Json::array();
  if (ti.alpha) {
    const BAModule reg = regular_module(b);
    reynolds.push_back(Json{{"module", "regular"}, {"pr", matrix_json(reynold(b, *ti.alpha, reg).pr)}});
    const BAModule ind = induced_module(b, regular_comodule(b.hopf()));
    reynolds.push_back(Json{{"module", "induced"}, {"pr", matrix_json(reynold(b, *ti.alpha, ind).pr)}});
  }
  out["reynold"] = reynolds;
  if (in.gamma) {
    const auto tr = trace_tame(*in.gamma);
    out["trace"] = Json{{"tame", tr.witness.has_value()},
                        {"witness", optional_vector(tr.witness)},
                        {"certificate", optional_matrix(tr.certificate)}};
    if (tr.witness.has_value() != ti.tame()) throw InvariantError("trace criterion and total integral disagree");
  }
  const auto rb = rebase_to_invariants(b);
  out["over_invariants"] = Json{{"tame", rb.tame_over_c()},
                                {"beta", optional_matrix(rb.beta)},
                                {"translations_verified", rb.translations_verified}};
  if (rb.tame_over_c() != ti.tame()) throw InvariantError("tameness over k and over C disagree");
  return out;
}

inline std::vector<InertiaHopf> inertia_list(const Instance& in) {
  std::vector<InertiaHopf> out;
  for (const auto& p : in.points) out.push_back(inertia_hopf(in.action, p));
  return out;
}

inline Json inertia_section(const Instance& in, const std::vector<InertiaHopf>& list) {
  Json out = Json::array();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& ih = list[i];
    Json e{{"point", ih.point.label},
           {"residue", field_json(ih.point.residue)},
           {"residue_description", ih.point.residue.describe()},
           {"ideal", columns_json(ih.ideal)},
           {"dimension", ih.hopf.dim},
           {"hopf", hopf_structure_json(ih.hopf)},
           {"linearly_reductive", is_linearly_reductive(ih.hopf)}};
    if (in.gamma) {
      const auto g0 = inertia_at(*in.gamma, i);
      const auto t = tame_at(*in.gamma, i);
      const bool agrees = inertia_agrees(*in.gamma, i, ih);
      if (!agrees) throw InvariantError("inertia Hopf algebra at '" + ih.point.label + "' differs from Map(G0, k(p))");
      e["constant"] = Json{{"decomposition", labels(in.gamma->group, g0.decomposition)},
                           {"inertia", labels(in.gamma->group, g0.elements)},
                           {"tame_at", t.tame},
                           {"agrees", agrees}};
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline Json torsor_section(const Instance& in, const std::vector<InertiaHopf>& inertia) {
  const auto g = galois_map(in.action);
  const auto fr = freeness(g);
  const auto t = is_torsor(in.action, g);
  bool unramified = !inertia.empty();
  for (const auto& ih : inertia) unramified = unramified && ih.hopf.dim == 1;
  if (!inertia.empty() && fr.free != unramified) throw InvariantError("free and unramified disagree");
  if (t.torsor && !fr.free) throw InvariantError("a torsor that is not free");
  return Json{{"free", fr.free},
              {"galois_rank", fr.rank},
              {"target_dim", fr.target_dim},
              {"cokernel_row", optional_matrix(fr.cokernel_row)},
              {"unramified", inertia.empty() ? Json(nullptr) : Json(unramified)},
              {"torsor", t.torsor},
              {"free_over_invariants", t.free_over_c},
              {"rank_over_invariants", t.c_rank},
              {"freeness_reason", t.freeness_reason},
              {"relative_source_dim", t.source_dim},
              {"relative_target_dim", t.target_dim},
              {"relative_rank", t.galois_rank},
              {"kernel_vector", optional_vector(t.kernel_vector)},
              {"relative_cokernel_row", optional_matrix(t.cokernel_row)},
              {"surrogate", t.surrogate}};
}

inline Json slice_section(const Instance& in) {
  if (!in.gamma) return Json{{"applicable", false}, {"reason", "no constant group action"}};
  const auto& ga = *in.gamma;
  const auto tr = transitivity_check(ga);
  Json orbits = Json::array();
  for (const auto& o : tr.orbits) orbits.push_back(o);
  const auto lf = local_freeness_check(ga);
  Json out{{"applicable", true},
           {"transitivity", Json{{"transitive", tr.transitive},
                                 {"orbits", orbits},
                                 {"invariant_idempotents", tr.invariant_idempotents},
                                 {"invariants_local", tr.c_local}}},
           {"local_freeness", Json{{"status", lf.status},
                                   {"trivial_factor", lf.trivial_factor ? Json(*lf.trivial_factor) : Json(nullptr)},
                                   {"galois_rank", lf.galois_rank},
                                   {"target_dim", lf.target_dim}}},
           {"conjugacy_failures", inertia_conjugacy_failures(ga)}};
  if (lf.status == "violated") throw InvariantError("trivial inertia at a prime of a transitive action without freeness");
  Json slices = Json::array();
  if (tr.transitive) {
    for (std::size_t i = 0; i < ga.factors.size(); ++i) {
      const auto s = slice_decompose(ga, i);
      if (!s.ok()) throw InvariantError("slice at '" + s.prime + "' fails its checks");
      slices.push_back(Json{{"prime", s.prime},
                            {"base_changed", s.base_changed},
                            {"field", field_json(s.field)},
                            {"factor", s.factor},
                            {"inertia", labels(ga.group, s.inertia)},
                            {"index", s.index},
                            {"local_dim", s.local.dim},
                            {"local_basis", matrix_json(s.local_basis)},
                            {"slice_basis", matrix_json(s.slice_basis)},
                            {"phi", matrix_json(s.phi)},
                            {"invariants_map", matrix_json(s.c_map)},
                            {"bijective", s.bijective},
                            {"algebra_map", s.algebra_map},
                            {"equivariant", s.equivariant},
                            {"invariants_isomorphism", s.invariants_iso},
                            {"dimension_identity", s.dimension_identity}});
    }
  } else {
    out["reason"] = "the group does not act transitively on the primes";
  }
  out["slices"] = slices;
  return out;
}

inline Json equivalence_section(const Instance& in, const std::vector<InertiaHopf>& inertia) {
  std::vector<HopfAlgebra> hopfs;
  for (const auto& ih : inertia) hopfs.push_back(ih.hopf);
  const auto rep = equivalence_report(in.action, hopfs, battery_sequences(in));
  if (rep.status == "disagree") throw InvariantError("the four tameness criteria disagree on a free action");
  Json non_exact = nullptr;
  if (rep.non_exact) {
    non_exact = Json{{"sequence", rep.non_exact->label}, {"missed", optional_vector(rep.non_exact->missed)}};
  }
  return Json{{"status", rep.status},
              {"total_integral", rep.total_integral},
              {"battery_exact", rep.battery_exact},
              {"reynold_on_battery", rep.reynold_on_battery},
              {"inertia_reductive", rep.inertia_reductive},
              {"inertia_verdicts", rep.inertia_verdicts},
              {"free_over_invariants", rep.free_over_c},
              {"battery", rep.battery},
              {"battery_size", rep.battery_size},
              {"sequences", rep.sequence_labels},
              {"non_exact", non_exact},
              {"reynold_failure", rep.reynold_failure.empty() ? Json(nullptr) : Json(rep.reynold_failure)}};
}

}  // namespace report_detail

inline Json run(const Instance& in, const RunOptions& opt = {}) {
  using namespace report_detail;
  const std::vector<std::string>& requested = opt.only.empty() ? in.checks : opt.only;
  for (const auto& c : requested)
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end()) {
      throw SchemaError("unknown check '" + c + "'");
    }
  auto wants = [&](const char* c) { return std::find(requested.begin(), requested.end(), c) != requested.end(); };
  const auto& b = in.action;
  Json report{{"entry", in.name},
              {"field", field_json(b.field())},
              {"field_description", b.field().describe()},
              {"dimensions", Json{{"hopf", b.hopf().dim}, {"algebra", b.dim()}, {"invariants", b.invariants_algebra().dim}}},
              {"invariants", columns_json(b.invariants_inclusion())},
              {"points", in.points.size()},
              {"checks_run", requested}};
  if (!opt.digest.empty()) report["input_digest"] = opt.digest;
  Json timing = Json::object();
  Json checks = Json::object();
  auto timed = [&](const char* name, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    checks[name] = fn();
    timing[name] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };
  // dependency order: tameness, geometry, slices, then the cross-check
  if (wants("total-integral")) timed("total-integral", [&] { return total_integral_section(in); });
  std::vector<InertiaHopf> inertia;
  if (wants("inertia") || wants("torsor") || wants("equivalence")) inertia = inertia_list(in);
  if (wants("inertia")) timed("inertia", [&] { return inertia_section(in, inertia); });
  if (wants("torsor")) timed("torsor", [&] { return torsor_section(in, inertia); });
  if (wants("slice")) timed("slice", [&] { return slice_section(in); });
  if (wants("equivalence")) timed("equivalence", [&] { return equivalence_section(in, inertia); });
  report["checks"] = checks;

  Json verdicts = Json::object();
  if (checks.contains("total-integral")) verdicts["tame"] = checks["total-integral"]["tame"];
  if (checks.contains("torsor")) {
    verdicts["free"] = checks["torsor"]["free"];
    verdicts["torsor"] = checks["torsor"]["torsor"];
  }
  if (checks.contains("inertia")) {
    bool trivial = true, reductive = true;
    for (const auto& e : checks["inertia"]) {
      trivial = trivial && e["dimension"] == 1;
      reductive = reductive && e["linearly_reductive"].get<bool>();
    }
    verdicts["inertia_trivial"] = trivial;
    verdicts["inertia_linearly_reductive"] = reductive;
  }
  if (checks.contains("equivalence")) verdicts["equivalence"] = checks["equivalence"]["status"];
  report["verdicts"] = verdicts;
  if (opt.timing) report["timing_ms"] = timing;
  return report;
}

// --- audit --------------------------------------------------------------------------

/// Re-verifies the witnesses embedded in a report; returns the failures.
inline std::vector<std::string> audit(const Instance& in, const Json& report) {
  std::vector<std::string> out;
  const auto& b = in.action;
  const Field& f = b.field();
  auto fail = [&](std::string s) { out.push_back(std::move(s)); };
  const Json& checks = report.at("checks");

  if (checks.contains("total-integral")) {
    const Json& t = checks["total-integral"];
    if (t["tame"].get<bool>()) {
      const Matrix alpha = parse_matrix(f, t["alpha"], "alpha");
      if (!is_total_integral(b, alpha)) fail("alpha is not a total integral");
      for (const auto& r : t["reynold"]) {
        const BAModule n = r["module"] == "regular" ? regular_module(b) : induced_module(b, regular_comodule(b.hopf()));
        const Matrix pr = parse_matrix(f, r["pr"], "pr");
        if (!reynold_failures(pr, invariants(n.comodule)).empty()) fail("Reynold operator on " + r["module"].get<std::string>());
      }
    } else if (!certifies_not_tame(b, parse_matrix(f, t["certificate"], "certificate"))) {
      fail("certificate does not refute the total-integral system");
    }
    if (t.contains("trace") && in.gamma) {
      Matrix tr(f, b.dim(), b.dim());
      for (const auto& m : in.gamma->action) tr = tr + m;
      const Json& w = t["trace"];
      if (w["tame"].get<bool>()) {
        if (tr * parse_vector(f, w["witness"], "trace witness") != b.algebra.unit) fail("trace witness");
      } else {
        const Matrix y = parse_matrix(f, w["certificate"], "trace certificate");
        if (!(y * tr).is_zero() || !f.is_one((y * b.algebra.unit)(0, 0))) fail("trace certificate");
      }
    }
  }
  if (checks.contains("inertia")) {
    for (const auto& e : checks["inertia"]) {
      const Field kp = parse_field(e["residue"]);
      const Json& hj = e["hopf"];
      const std::size_t n = hj["dim"].get<std::size_t>();
      HopfAlgebra h{kp,
                    n,
                    parse_matrix(kp, hj["mult"], "mult", n, n * n),
                    parse_vector(kp, hj["unit"], "unit", n),
                    parse_matrix(kp, hj["comult"], "comult", n * n, n),
                    parse_matrix(kp, hj["counit"], "counit", 1, n),
                    parse_matrix(kp, hj["antipode"], "antipode", n, n),
                    {}};
      if (!validate_hopf(h).ok()) fail("inertia Hopf algebra at " + e["point"].get<std::string>() + " is invalid");
    }
  }
  if (checks.contains("torsor")) {
    const Json& t = checks["torsor"];
    const auto g = galois_map(b);
    if (!t["cokernel_row"].is_null()) {
      const Matrix y = parse_matrix(f, t["cokernel_row"], "cokernel row");
      if (y.is_zero() || !(y * g.absolute).is_zero()) fail("cokernel row of the Galois map");
    }
    if (!t["kernel_vector"].is_null()) {
      const Matrix v = parse_vector(f, t["kernel_vector"], "kernel vector");
      if (v.is_zero() || !(g.relative * v).is_zero()) fail("kernel vector of the relative Galois map");
    }
    if (!t["relative_cokernel_row"].is_null()) {
      const Matrix y = parse_matrix(f, t["relative_cokernel_row"], "relative cokernel row");
      if (y.is_zero() || !(y * g.relative).is_zero()) fail("cokernel row of the relative Galois map");
    }
  }
  if (checks.contains("slice") && in.gamma) {
    for (const auto& s : checks["slice"]["slices"]) {
      const Field sf = parse_field(s["field"]);
      const GammaAction ga = s["base_changed"].get<bool>() ? extend_scalars(*in.gamma, sf) : *in.gamma;
      const FiniteGroup& g = ga.group;
      const Matrix phi = parse_matrix(sf, s["phi"], "phi");
      const Matrix slice = parse_matrix(sf, s["slice_basis"], "slice basis");
      const std::size_t n = g.order(), dl = s["local_dim"].get<std::size_t>();
      if (phi.rows() != n * dl || phi.cols() != ga.dim()) {
        fail("phi has the wrong shape");
        continue;
      }
      bool equivariant = true;
      for (std::size_t l = 0; l < n && equivariant; ++l) {
        const Matrix lhs = phi * ga.action[l];
        for (std::size_t x = 0; x < n && equivariant; ++x)
          for (std::size_t r = 0; r < dl && equivariant; ++r)
            for (std::size_t c = 0; c < ga.dim(); ++c)
              if (lhs(x * dl + r, c) != phi(g.mul(g.inverse(l), x) * dl + r, c)) {
                equivariant = false;
                break;
              }
      }
      if (!equivariant) fail("phi is not equivariant at " + s["prime"].get<std::string>());
      if (!is_injective(phi) || !same_span(phi, slice)) fail("phi is not onto the slice algebra at " + s["prime"].get<std::string>());
    }
  }
  return out;
}

// --- text rendering ------------------------------------------------------------------

inline std::string render_text(const Json& report) {
  std::string s = "entry: " + report.value("entry", std::string("(document)")) + "\n";
  s += "field: " + report["field_description"].get<std::string>() + "\n";
  const auto& d = report["dimensions"];
  s += "dim A = " + d["hopf"].dump() + ", dim B = " + d["algebra"].dump() + ", dim C = " + d["invariants"].dump() + "\n";
  for (const auto& [k, v] : report["verdicts"].items()) s += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  if (report["checks"].contains("inertia")) {
    for (const auto& e : report["checks"]["inertia"]) {
      s += "inertia at " + e["point"].get<std::string>() + " over " + e["residue_description"].get<std::string>() +
           ": dim " + e["dimension"].dump() + (e["linearly_reductive"].get<bool>() ? ", linearly reductive" : ", not linearly reductive");
      if (e.contains("constant")) s += ", G0 = {" + [&] {
        std::string l;
        for (const auto& x : e["constant"]["inertia"]) l += (l.empty() ? "" : ",") + x.get<std::string>();
        return l;
      }() + "}";
      s += "\n";
    }
  }
  if (report.contains("input_digest")) s += "digest: " + report["input_digest"].get<std::string>() + "\n";
  if (report.contains("timing_ms"))
    for (const auto& [k, v] : report["timing_ms"].items()) s += "time " + k + ": " + v.dump() + " ms\n";
  return s;
}

}  // namespace tameram
