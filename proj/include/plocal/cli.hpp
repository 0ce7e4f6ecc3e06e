#pragma once

// Command implementations and the serialization formats behind the cmknot
// tool.  Field names and column order are part of the output contract
// (schema 1): identical configurations must produce byte-identical output,
// so nothing here emits timestamps or addresses.

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "plocal/criteria.hpp"
#include "plocal/oracle.hpp"

namespace plocal::cli {

using Json = nlohmann::ordered_json;

struct CommandResult {
  int exit_code = 0;
  std::string output;
  std::string error;
};

constexpr int kSchemaVersion = 1;

inline Json scalar_to_json(const Scalar& s) {
  Json j;
  j["value"] = s.value().str();
  j["residue"] = s.residue();
  Valuation v = s.valuation();
  if (v.has_value())
    j["valuation"] = *v;
  else
    j["valuation"] = nullptr;
  return j;
}

inline Json invariants_to_json(const QuotientInvariants& q) {
  Json j;
  j["torsion"] = q.torsion;
  j["free_rank"] = q.free_rank;
  return j;
}

inline Json report_to_json(const ClassificationReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["variant"] = variant_name(r.params.variant);
  j["p"] = r.params.p;
  j["a"] = r.params.a.str();
  j["b"] = r.params.b.str();
  if (r.params.uses_c()) j["c"] = r.params.c.str();
  j["constraints_ok"] = r.constraints_ok;
  Json cg;
  cg["tag"] = class_tag_name(r.class_group.tag);
  cg["invariants"] = invariants_to_json(r.class_group.invariants);
  cg["dim"] = r.class_group.dim_mod_p;
  j["class_group"] = cg;
  j["det_A"] = scalar_to_json(r.det_A);
  j["det_K"] = scalar_to_json(r.det_K);
  j["knot_trivial"] = r.knot_trivial;
  j["condition_iii"] = r.condition_iii;
  j["case"] = case_tag_name(r.case_tag);
  if (r.x_tilde_trivial.has_value())
    j["x_tilde_trivial"] = *r.x_tilde_trivial;
  else
    j["x_tilde_trivial"] = nullptr;
  Json primes = Json::array();
  for (const auto& [label, pb] : r.per_prime) {
    Json pj;
    pj["label"] = label;
    pj["splits_completely"] = pb.splits_completely;
    pj["non_split"] = pb.non_split;
    pj["unramified"] = pb.unramified;
    pj["totally_ramified"] = pb.totally_ramified;
    pj["image_invariants"] = invariants_to_json(pb.image_invariants);
    primes.push_back(pj);
  }
  j["per_prime"] = primes;
  return j;
}

inline std::string report_to_table(const ClassificationReport& r) {
  std::ostringstream os;
  os << "variant          " << variant_name(r.params.variant) << "\n";
  os << "p                " << r.params.p << "\n";
  os << "a, b" << (r.params.uses_c() ? ", c" : "") << "            " << r.params.a << ", " << r.params.b;
  if (r.params.uses_c()) os << ", " << r.params.c;
  os << "\n";
  os << "constraints_ok   " << (r.constraints_ok ? "true" : "false") << "\n";
  os << "class_group      " << class_tag_name(r.class_group.tag) << " (dim " << r.class_group.dim_mod_p << ")\n";
  os << "det_A            " << r.det_A.value() << " (residue " << r.det_A.residue() << ")\n";
  os << "det_K            " << r.det_K.value() << " (residue " << r.det_K.residue() << ")\n";
  os << "knot_trivial     " << (r.knot_trivial ? "true" : "false") << "\n";
  os << "condition_iii    " << (r.condition_iii ? "true" : "false") << "\n";
  os << "case             " << case_tag_name(r.case_tag) << "\n";
  os << "x_tilde_trivial  ";
  if (r.x_tilde_trivial.has_value())
    os << (*r.x_tilde_trivial ? "true" : "false") << "\n";
  else
    os << "(constraints fail; not a model)\n";
  os << "per prime (in the fixed field of the condition-(iii) subgroup):\n";
  for (const auto& [label, pb] : r.per_prime) {
    os << "  " << label << ": splits_completely=" << (pb.splits_completely ? "true" : "false")
       << " non_split=" << (pb.non_split ? "true" : "false") << " unramified=" << (pb.unramified ? "true" : "false")
       << " totally_ramified=" << (pb.totally_ramified ? "true" : "false") << "\n";
  }
  return os.str();
}

inline CommandResult cmd_classify(Variant variant, long long p, const Int& a, const Int& b, const Int& c,
                                  bool checked, const std::string& emit) {
  CommandResult res;
  try {
    GaloisModel m = build_model(ModelParams{variant, p, a, b, c}, checked);
    ClassificationReport r = classify(m);
    if (emit == "table")
      res.output = report_to_table(r);
    else
      res.output = report_to_json(r).dump(2) + "\n";
  } catch (const std::exception& e) {
    res.exit_code = 2;
    res.error = std::string(e.what()) + "\n";
  }
  return res;
}

namespace detail_cli {

struct SweepRow {
  long long a, b, c;
  ClassTag tag;
  std::size_t dim;
  long long detA_res, detK_res;
  bool knot_trivial, condition_iii;
  CaseTag case_tag;
  std::optional<bool> x_tilde;
  bool constraints_ok;
};

inline SweepRow sweep_row(Variant variant, long long p, long long a, long long b, long long c) {
  GaloisModel m = build_model(ModelParams{variant, p, Int(a), Int(b), Int(c)}, false);
  ClassGroupStructure cg = class_group_structure(m);
  ClosedForms cf = closed_form_values(m);
  SweepRow row{a,
               b,
               c,
               cg.tag,
               cg.dim_mod_p,
               cf.det_A.residue(),
               cf.det_K.residue(),
               rank_mod_p(knot_matrix(m)) == WedgeVector::dimension(m.ambient_rank),
               condition_iii(m),
               case_trichotomy(m, cg),
               std::nullopt,
               m.params.constraints_hold() && cg.dim_mod_p <= 2};
  if (row.constraints_ok) row.x_tilde = closed_form_x_tilde_trivial(m);
  return row;
}

}  // namespace detail_cli

inline CommandResult cmd_sweep(Variant variant, long long p, const std::string& emit,
                               long long sweep_budget = 50) {
  CommandResult res;
  if (p > sweep_budget) {
    res.exit_code = 2;
    res.error = "sweep budget exceeded: p > " + std::to_string(sweep_budget) + "\n";
    return res;
  }
  try {
    require_odd_prime(p);
  } catch (const std::exception& e) {
    res.exit_code = 2;
    res.error = std::string(e.what()) + "\n";
    return res;
  }

  const bool deg6 = variant == Variant::Deg6;
  std::vector<detail_cli::SweepRow> rows;
  for (long long a = 0; a < p; ++a)
    for (long long b = 0; b < p; ++b) {
      if (deg6)
        for (long long c = 0; c < p; ++c) rows.push_back(detail_cli::sweep_row(variant, p, a, b, c));
      else
        rows.push_back(detail_cli::sweep_row(variant, p, a, b, 0));
    }

  std::size_t n_ok = 0, n_knot = 0, n_iii = 0, n_x = 0;
  std::size_t n_tag[4] = {0, 0, 0, 0};
  for (const auto& r : rows) {
    n_ok += r.constraints_ok;
    n_knot += r.knot_trivial;
    n_iii += r.condition_iii;
    n_x += r.x_tilde.value_or(false);
    n_tag[static_cast<int>(r.tag)]++;
  }

  if (emit == "json") {
    Json j;
    j["schema"] = kSchemaVersion;
    j["variant"] = variant_name(variant);
    j["p"] = p;
    Json jrows = Json::array();
    for (const auto& r : rows) {
      Json jr;
      jr["a"] = r.a;
      jr["b"] = r.b;
      if (deg6) jr["c"] = r.c;
      jr["class_tag"] = class_tag_name(r.tag);
      jr["dim"] = r.dim;
      jr["detA_res"] = r.detA_res;
      jr["detK_res"] = r.detK_res;
      jr["knot_trivial"] = r.knot_trivial;
      jr["condition_iii"] = r.condition_iii;
      jr["case"] = case_tag_name(r.case_tag);
      if (r.x_tilde.has_value())
        jr["x_tilde_trivial"] = *r.x_tilde;
      else
        jr["x_tilde_trivial"] = nullptr;
      jr["constraints_ok"] = r.constraints_ok;
      jrows.push_back(jr);
    }
    j["rows"] = jrows;
    Json s;
    s["rows"] = rows.size();
    s["trivial"] = n_tag[0];
    s["cyclic"] = n_tag[1];
    s["two_generated"] = n_tag[2];
    s["three_generated"] = n_tag[3];
    s["knot_trivial"] = n_knot;
    s["condition_iii"] = n_iii;
    s["x_tilde_trivial"] = n_x;
    s["constraints_ok"] = n_ok;
    j["summary"] = s;
    res.output = j.dump(2) + "\n";
    return res;
  }

  std::ostringstream os;
  os << "# schema=" << kSchemaVersion << "\n";
  os << "a,b," << (deg6 ? "c," : "")
     << "class_tag,dim,detA_res,detK_res,knot_trivial,condition_iii,case,x_tilde_trivial,constraints_ok\n";
  auto bl = [](bool v) { return v ? "true" : "false"; };
  for (const auto& r : rows) {
    os << r.a << "," << r.b << ",";
    if (deg6) os << r.c << ",";
    os << class_tag_name(r.tag) << "," << r.dim << "," << r.detA_res << "," << r.detK_res << ","
       << bl(r.knot_trivial) << "," << bl(r.condition_iii) << "," << case_tag_name(r.case_tag) << ","
       << (r.x_tilde.has_value() ? bl(*r.x_tilde) : "") << "," << bl(r.constraints_ok) << "\n";
  }
  os << "# summary: rows=" << rows.size() << " trivial=" << n_tag[0] << " cyclic=" << n_tag[1]
     << " two_generated=" << n_tag[2] << " three_generated=" << n_tag[3] << " knot_trivial=" << n_knot
     << " condition_iii=" << n_iii << " x_tilde_trivial=" << n_x << " constraints_ok=" << n_ok << "\n";
  res.output = os.str();
  return res;
}

namespace detail_cli {

struct LemmaGridOutcome {
  std::string lemma;
  std::size_t applicable = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;
  std::vector<std::string> failures;  // descriptions of the first few failing tuples
};

inline void run_lemma_grid(const std::string& lemma, Variant variant, long long p, LemmaGridOutcome& out) {
  const bool deg6 = variant == Variant::Deg6;
  for (long long a = 0; a < p; ++a)
    for (long long b = 0; b < p; ++b)
      for (long long c = 0; c < (deg6 ? p : 1); ++c) {
        GaloisModel m = build_model(ModelParams{variant, p, Int(a), Int(b), Int(c)}, false);
        LemmaReport r = verify_lemma(m, lemma);
        if (!r.applicable) {
          ++out.skipped;
          continue;
        }
        ++out.applicable;
        if (r.passed()) {
          ++out.passed;
        } else if (out.failures.size() < 5) {
          std::ostringstream os;
          os << variant_name(variant) << " p=" << p << " (" << a << "," << b;
          if (deg6) os << "," << c;
          os << "):";
          for (const auto& ch : r.checks)
            if (!ch.pass) os << " [" << ch.claim << "]";
          out.failures.push_back(os.str());
        }
      }
}

}  // namespace detail_cli

inline CommandResult cmd_verify(long long p, std::vector<std::string> lemmas, long long oracle_depth,
                                std::size_t oracle_pairs, const std::string& emit) {
  CommandResult res;
  try {
    require_odd_prime(p);
  } catch (const std::exception& e) {
    res.exit_code = 2;
    res.error = std::string(e.what()) + "\n";
    return res;
  }
  bool run_oracle = lemmas.empty();
  if (lemmas.empty()) {
    lemmas = lemma_catalogue();
  } else {
    for (auto it = lemmas.begin(); it != lemmas.end();) {
      if (*it == "oracle_agreement") {
        run_oracle = true;
        it = lemmas.erase(it);
        continue;
      }
      const auto& cat = lemma_catalogue();
      if (std::find(cat.begin(), cat.end(), *it) == cat.end()) {
        res.exit_code = 2;
        res.error = "unknown lemma id: " + *it + "\n";
        return res;
      }
      ++it;
    }
  }

  std::ostringstream os;
  Json jout;
  jout["schema"] = kSchemaVersion;
  jout["p"] = p;
  Json jlemmas = Json::array();
  bool all_ok = true;

  for (const auto& lemma : lemmas) {
    detail_cli::LemmaGridOutcome out;
    out.lemma = lemma;
    if (lemma == "ki_deg4") {
      detail_cli::run_lemma_grid(lemma, Variant::Deg4NonGalois, p, out);
      detail_cli::run_lemma_grid(lemma, Variant::Deg4Biquadratic, p, out);
    } else if (lemma == "sigma_permutation") {
      detail_cli::run_lemma_grid(lemma, Variant::Deg4NonGalois, p, out);
      detail_cli::run_lemma_grid(lemma, Variant::Deg4Biquadratic, p, out);
      detail_cli::run_lemma_grid(lemma, Variant::Deg6, p, out);
    } else {
      detail_cli::run_lemma_grid(lemma, Variant::Deg6, p, out);
    }
    bool ok = out.passed == out.applicable;
    all_ok = all_ok && ok;
    os << "lemma " << lemma << ": " << out.passed << "/" << out.applicable << " tuples agree";
    if (out.skipped > 0) os << " (" << out.skipped << " skipped: hypotheses not met)";
    os << (ok ? "" : "  FAIL") << "\n";
    for (const auto& f : out.failures) os << "    " << f << "\n";
    Json jl;
    jl["lemma"] = lemma;
    jl["applicable"] = out.applicable;
    jl["passed"] = out.passed;
    jl["skipped"] = out.skipped;
    jl["ok"] = ok;
    jlemmas.push_back(jl);
  }

  if (run_oracle) {
    std::mt19937_64 rng(0xcafef00dull);
    std::size_t agreed = 0, skipped = 0, failed = 0;
    std::size_t done = 0;
    while (done < oracle_pairs) {
      long long op = (rng() % 2 == 0) ? 3 : 5;
      std::size_t n = 2 + rng() % (op == 5 ? 2 : 3);  // keep p^(depth*n) within budget
      std::uniform_int_distribution<long long> entry(-op * op, op * op);
      auto rand_lattice = [&] {
        std::size_t gens = 1 + rng() % n;
        std::vector<std::vector<Rational>> g(gens, std::vector<Rational>(n));
        for (auto& col : g)
          for (auto& x : col) x = entry(rng);
        return Lattice::from_generators(n, g, op);
      };
      Lattice l1 = rand_lattice(), l2 = rand_lattice();
      try {
        bool ok = oracle_agree(l1, l2, oracle_depth, OracleOp::Sum, rng()) &&
                  oracle_agree(l1, l2, oracle_depth, OracleOp::Intersect, rng()) &&
                  oracle_agree(l1, l2, oracle_depth, OracleOp::ContainsSample, rng());
        if (ok)
          ++agreed;
        else
          ++failed;
        ++done;
      } catch (const std::domain_error&) {
        ++skipped;  // depth insufficient for this sample; redraw
        if (skipped > 10 * oracle_pairs) break;
      }
    }
    bool ok = failed == 0 && done == oracle_pairs;
    all_ok = all_ok && ok;
    os << "oracle_agreement: " << agreed << "/" << done << " sampled pairs agree";
    if (skipped > 0) os << " (" << skipped << " redrawn: depth insufficient)";
    os << (ok ? "" : "  FAIL") << "\n";
    Json jo;
    jo["agreed"] = agreed;
    jo["failed"] = failed;
    jo["redrawn"] = skipped;
    jo["ok"] = ok;
    jout["oracle_agreement"] = jo;
  }

  jout["lemmas"] = jlemmas;
  jout["ok"] = all_ok;
  res.exit_code = all_ok ? 0 : 1;
  res.output = emit == "json" ? jout.dump(2) + "\n" : os.str();
  return res;
}

}  // namespace plocal::cli
