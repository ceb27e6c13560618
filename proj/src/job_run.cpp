#include <algorithm>
#include <chrono>

#include <json.hpp>

#include "rank2/frobenius.hpp"
#include "rank2/job.hpp"
#include "rank2/spectral.hpp"

namespace rank2 {

using json = nlohmann::ordered_json;

namespace {

json scalars(const std::vector<Scalar>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

json verdict(const std::string& check, const std::string& status) {
  json v;
  v["check"] = check;
  v["status"] = status;
  return v;
}

void tag(json& v, Tag t) {
  v["tag"] = tag_name(t);
  v["condition"] = tag_condition(t);
}

json obstruction_json(const Obstruction& o) {
  json j;
  j["tag"] = tag_name(o.tag);
  j["center"] = o.center;
  j["exponent"] = o.exponent;
  j["value"] = o.value.str();
  j["detail"] = o.detail;
  return j;
}

json pole_violation_json(const PoleViolation& v) {
  json j;
  j["tag"] = tag_name(v.tag);
  j["center"] = v.label;
  j["exponent"] = v.exponent;
  j["k"] = v.k;
  j["l"] = v.l;
  j["value"] = v.value.str();
  return j;
}

class Runner {
 public:
  Runner(const JobSpec& spec, const RunOptions& options) : spec_(spec), options_(options) {}

  Report run() {
    auto start = std::chrono::steady_clock::now();
    out_["schema"] = 1;
    out_["job"] = job_kind_name(spec_.kind);
    out_["genus"] = spec_.genus;
    out_["verdicts"] = json::array();
    out_["constants"] = json::object();
    out_["curve"] = nullptr;
    out_["frobenius"] = json::array();
    out_["truncation"] = json::object();
    out_["obstructions"] = json::array();
    out_["notes"] = json::array();

    Report report;
    try {
      potential_ = build_potential(spec_);
      out_["potential"] = class_name(potential_->kind);
      note_half_period();
      switch (spec_.kind) {
        case JobKind::Check: check(true); break;
        case JobKind::Curve: check(false); break;
        case JobKind::Frobenius: frobenius(); break;
        case JobKind::Explore: explore(); break;
      }
      report.exit_code = obstructed_ ? 2 : 0;
    } catch (const Error& e) {
      out_["error"] = e.what();
      report.exit_code = 1;
    }
    if (options_.timing) {
      auto elapsed = std::chrono::steady_clock::now() - start;
      out_["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    out_["exit_code"] = report.exit_code;
    report.json = out_.dump(2) + "\n";
    report.text = render_text(report.json);
    return report;
  }

 private:
  void add(json v) { out_["verdicts"].push_back(std::move(v)); }

  void obstruct(json o) {
    obstructed_ = true;
    out_["obstructions"].push_back(std::move(o));
  }

  void note_half_period() {
    const auto* e = potential_->elliptic();
    if (!e || !e->shift || *e->shift == HalfPeriod::Zero) return;
    Scalar value = half_period_value(e->g2, *e->shift, potential_->extension);
    out_["notes"].push_back("half-period value wp(omega) = " + value.str() +
                            (value.is_rational() ? " is rational" : " lies in the active quadratic field"));
  }

  int expansion_order() {
    int g = spec_.genus;
    int order = options_.truncation.value_or(spec_.truncation.value_or(default_order(g)));
    json t;
    t["order"] = order;
    t["auto"] = !options_.truncation && !spec_.truncation;
    t["minimum"] = minimum_order(g);
    t["certified_exponent"] = order - 4 * (g + 1) - 1;
    out_["truncation"] = t;
    return order;
  }

  bool pole_gate() {
    if (potential_->kind == PotentialClass::EntirePolynomial) {
      json v = verdict("pole_conditions", "NOT_APPLICABLE");
      v["reason"] = "entire potential has no poles";
      add(v);
      return true;
    }
    PoleVerdict pv = check_pole_conditions(*potential_, spec_.genus);
    if (const auto* pass = std::get_if<PoleCheckPass>(&pv)) {
      json v = verdict("pole_conditions", "PASS");
      json levels = json::object();
      for (const auto& [label, n] : pass->levels) levels[label] = n;
      v["levels"] = levels;
      add(v);
      return true;
    }
    const auto& bad = std::get<PoleViolation>(pv);
    json v = verdict("pole_conditions", "VIOLATION");
    tag(v, bad.tag);
    v["detail"] = pole_violation_json(bad);
    add(v);
    obstruct(pole_violation_json(bad));
    return false;
  }

  bool infinity_gate() {
    InfinityVerdict iv = check_infinity(*potential_);
    if (std::holds_alternative<InfinityPass>(iv)) {
      add(verdict("infinity", "PASS"));
      return true;
    }
    if (const auto* na = std::get_if<InfinityNotApplicable>(&iv)) {
      json v = verdict("infinity", "NOT_APPLICABLE");
      v["reason"] = na->reason;
      add(v);
      return true;
    }
    const auto& bad = std::get<InfinityViolation>(iv);
    json v = verdict("infinity", "VIOLATION");
    tag(v, Tag::PoleAtInfinity);
    v["degree"] = bad.degree;
    v["leading"] = bad.leading.str();
    v["growth"] = scalars(bad.growth);
    add(v);
    json o;
    o["tag"] = tag_name(Tag::PoleAtInfinity);
    o["center"] = "infinity";
    o["exponent"] = bad.degree;
    o["value"] = bad.leading.str();
    obstruct(o);
    return false;
  }

  void check(bool gates) {
    int order = expansion_order();
    if (gates) {
      bool ok = pole_gate();
      ok = infinity_gate() && ok;
      if (!ok) {
        add(verdict("closure", "SKIPPED"));
        return;
      }
    }
    RunResult rr = rank2::run(*potential_, spec_.genus, order);
    if (const auto* ob = std::get_if<Obstruction>(&rr)) {
      closure_failed(*ob);
      return;
    }
    const auto& state = std::get<HierarchyState>(rr);
    CloseResult cr = rank2::close(state, *potential_);
    if (const auto* ob = std::get_if<Obstruction>(&cr)) {
      closure_failed(*ob);
      return;
    }
    const auto& cl = std::get<Closure>(cr);
    json v = verdict("closure", "PASS");
    v["steps"] = spec_.genus;
    json free = json::array();
    for (int i : cl.free) free.push_back("C" + std::to_string(i));
    v["free_constants"] = free;
    v["final_constant"] = cl.final_constant.str();
    v["certified_below"] = cl.certified_below == kExactOrder ? json("exact") : json(cl.certified_below);
    add(v);
    for (const auto& [i, value] : cl.constants) out_["constants"]["C" + std::to_string(i)] = value.str();

    spectral(state, cl);
  }

  void closure_failed(const Obstruction& ob) {
    json v = verdict("closure", "OBSTRUCTED");
    tag(v, ob.tag);
    v["detail"] = obstruction_json(ob);
    add(v);
    obstruct(obstruction_json(ob));
  }

  void spectral(const HierarchyState& state, const Closure& cl) {
    bool relation_zero = true;
    int validity = kExactOrder;
    std::optional<SpectralCurve> first;
    for (const auto& cs : state.centers) {
      QPoly q = make_qpoly(cs, cl.constants, spec_.genus);
      RelationReport rel = verify_relation(q, cs.V, cs.W);
      validity = std::min(validity, rel.validity);
      if (!rel.zero) {
        relation_zero = false;
        json o;
        o["tag"] = "relation";
        o["center"] = cs.label;
        o["z_power"] = rel.worst_power;
        o["residual"] = rel.worst.str();
        obstruct(o);
      }
      try {
        SpectralCurve c = curve(q, cs.V, cs.W);
        if (first && first->coeffs != c.coeffs) {
          json o;
          o["tag"] = tag_name(Tag::CurveXDependence);
          o["center"] = cs.label;
          o["detail"] = "curve differs between centers";
          obstruct(o);
        }
        if (!first) first = c;
      } catch (const XDependence& e) {
        json o;
        o["tag"] = tag_name(Tag::CurveXDependence);
        o["center"] = cs.label;
        o["z_power"] = e.z_power;
        o["series"] = e.series;
        obstruct(o);
        json v = verdict("curve", "OBSTRUCTED");
        tag(v, Tag::CurveXDependence);
        add(v);
        return;
      }
    }
    json rv = verdict("relation", relation_zero ? "PASS" : "OBSTRUCTED");
    rv["validity"] = validity == kExactOrder ? json("exact") : json(validity);
    add(rv);
    if (!first) return;
    json cv = verdict("curve", "PASS");
    cv["degree"] = first->degree();
    cv["nonsingular"] = first->nonsingular();
    add(cv);
    json c;
    c["coeffs"] = scalars(first->coeffs);
    c["polynomial"] = polynomial_string(first->coeffs);
    c["discriminant"] = first->discriminant.str();
    c["nonsingular"] = first->nonsingular();
    out_["curve"] = c;
  }

  void frobenius() {
    std::vector<Scalar> lambdas = spec_.lambdas.empty() ? std::vector<Scalar>{Scalar()} : spec_.lambdas;
    if (potential_->kind == PotentialClass::EntirePolynomial) {
      throw Error("frobenius jobs need a rational or elliptic potential");
    }
    bool any_pole = false;
    for (const auto& le : local_expansions(*potential_, 0)) {
      if (le.u.is_zero() || le.u.lo() >= 0) continue;
      any_pole = true;
      int M = options_.truncation.value_or(spec_.truncation.value_or(0));
      NoLogReport rep = no_log_check(*potential_, le.label, lambdas, spec_.force, M);
      if (rep.gate_violation) {
        json v = verdict("pole_conditions", "VIOLATION");
        tag(v, rep.gate_violation->tag);
        v["detail"] = pole_violation_json(*rep.gate_violation);
        v["forced"] = spec_.force;
        add(v);
        obstruct(pole_violation_json(*rep.gate_violation));
        if (!spec_.force) return;
      }
      if (rep.n == 0) continue;  // no quantized branches to follow
      IndicialData ind = indicial(le.u.coeff(-4));
      json t;
      t["terms"] = rep.verdicts.empty() ? 0 : rep.verdicts.front().terms;
      t["auto"] = M <= 0;
      out_["truncation"] = t;
      for (const auto& bv : rep.verdicts) {
        json f;
        f["pole"] = bv.label;
        f["n"] = rep.n;
        f["lambda"] = bv.lambda.str();
        f["branch"] = branch_name(bv.branch);
        const QuadraticFactor& q = bv.branch == Branch::Low ? *ind.low : *ind.high;
        f["exponent_quadratic"] = "sigma^2 - (" + q.s.str() + ")*sigma + (" + q.P.str() + ")";
        f["status"] = bv.pass ? "PASS" : "LOGARITHM";
        f["resonance"] = bv.resonance ? json(*bv.resonance) : json(nullptr);
        f["obstruction"] = bv.obstruction ? json(bv.obstruction->str()) : json(nullptr);
        f["structural_zero"] = bv.structural_zero;
        f["residual_zero"] = bv.residual_zero;
        f["branch_point"] = rep.branch_point;
        out_["frobenius"].push_back(f);
        if (!bv.pass) {
          json o;
          o["tag"] = tag_name(Tag::LogarithmRequired);
          o["center"] = bv.label;
          o["branch"] = branch_name(bv.branch);
          o["lambda"] = bv.lambda.str();
          o["value"] = bv.obstruction ? bv.obstruction->str() : "";
          obstruct(o);
        }
      }
      bool all = std::all_of(rep.verdicts.begin(), rep.verdicts.end(), [](const BranchVerdict& b) { return b.pass; });
      json v = verdict("no_logarithm", all ? "PASS" : "OBSTRUCTED");
      v["pole"] = le.label;
      v["branch_point"] = rep.branch_point;
      if (!all) tag(v, Tag::LogarithmRequired);
      add(v);
    }
    if (!any_pole) throw Error("potential has no poles to analyse");
  }

  void explore() {
    const auto* r = potential_->rational();
    if (!r) throw Error("explore jobs need a rational potential");
    int order = options_.truncation.value_or(spec_.truncation.value_or(0));
    ConjectureReport rep = explore_conjecture(r->poles, order, spec_.force, r->constant);
    json v = verdict("conjecture", "EXPLORATORY");
    v["note"] = "exploratory run; the outcome is evidence, not a verified claim";
    v["S"] = rep.S;
    v["pattern"] = rep.pattern_ok ? "PASS" : "VIOLATION";
    if (rep.pattern_violation) v["pattern_violation"] = pole_violation_json(*rep.pattern_violation);
    v["forced"] = spec_.force;
    v["ran"] = rep.ran;
    if (rep.ran) {
      json t;
      t["order"] = rep.order;
      t["auto"] = order <= 0;
      t["minimum"] = minimum_order(rep.S);
      out_["truncation"] = t;
    }
    std::string outcome = "not_run";
    if (rep.run_obstruction) {
      outcome = "obstructed";
      v["obstruction"] = obstruction_json(*rep.run_obstruction);
    } else if (rep.outcome) {
      if (const auto* ob = std::get_if<Obstruction>(&*rep.outcome)) {
        outcome = "unsolvable";
        v["obstruction"] = obstruction_json(*ob);
      } else {
        const auto& cl = std::get<Closure>(*rep.outcome);
        outcome = "solvable";
        for (const auto& [i, value] : cl.constants) out_["constants"]["C" + std::to_string(i)] = value.str();
        json free = json::array();
        for (int i : cl.free) free.push_back("C" + std::to_string(i));
        v["free_constants"] = free;
      }
    }
    v["outcome"] = outcome;
    add(v);
    if (!rep.ran) {
      // Rejected by the pattern gate.
      obstruct(pole_violation_json(*rep.pattern_violation));
    }
  }

  const JobSpec& spec_;
  RunOptions options_;
  std::optional<Potential> potential_;
  json out_;
  bool obstructed_ = false;
};

}  // namespace

Report run_job(const JobSpec& spec, const RunOptions& options) { return Runner(spec, options).run(); }

}  // namespace rank2
