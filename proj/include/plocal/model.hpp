#pragma once

// The three parametrized models of Gal(k~/k) for a CM-field k of degree 4 or
// 6 in which p splits completely.  Multiplicative words in the generators
// (gamma, x, y[, z]) are stored as additive exponent vectors; decomposition
// and inertia groups become rank-2 / rank-1 lattices.  Prime order follows
// the sigma-orbit of the first prime, which is also the row order of the
// knot matrices.

#include <optional>
#include <string>
#include <vector>

#include "plocal/lattice.hpp"

namespace plocal {

enum class Variant { Deg4NonGalois, Deg4Biquadratic, Deg6 };

inline std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Deg4NonGalois: return "deg4ng";
    case Variant::Deg4Biquadratic: return "deg4bq";
    case Variant::Deg6: return "deg6";
  }
  throw std::logic_error("unreachable");
}

inline std::optional<Variant> parse_variant(const std::string& s) {
  if (s == "deg4ng") return Variant::Deg4NonGalois;
  if (s == "deg4bq") return Variant::Deg4Biquadratic;
  if (s == "deg6") return Variant::Deg6;
  return std::nullopt;
}

struct ModelParams {
  Variant variant;
  long long p;
  Int a;
  Int b;
  Int c;  // Deg6 only

  bool uses_c() const { return variant == Variant::Deg6; }
  std::size_t ambient_rank() const { return variant == Variant::Deg6 ? 4 : 3; }
  std::size_t degree() const { return variant == Variant::Deg6 ? 6 : 4; }

  // Exact (not residue) existence constraints from the parameter remarks.
  bool constraints_hold() const {
    switch (variant) {
      case Variant::Deg4NonGalois: return a != 0 && b != 0 && a + b != 0;
      case Variant::Deg4Biquadratic: return a != 0 && b != 0 && a - b != 0;
      case Variant::Deg6:
        return (a * a + b * c) + (c * c + a * b) != 0 && (b * b - a * c) + (c * c + a * b) != 0;
    }
    throw std::logic_error("unreachable");
  }
};

struct PrimeLocalData {
  std::string label;
  std::vector<Rational> inertia_gen;
  std::vector<Rational> second_gen;
};

struct GaloisModel {
  ModelParams params;
  std::size_t ambient_rank;
  std::vector<std::string> generator_labels;
  std::vector<PrimeLocalData> primes;  // sigma-orbit order starting at the fixed prime

  long long prime() const { return params.p; }

  const PrimeLocalData& local_data(const std::string& label) const {
    for (const auto& pr : primes)
      if (pr.label == label) return pr;
    throw std::invalid_argument("unknown prime label: " + label);
  }
};

namespace detail {

inline std::vector<Rational> vec3(Int g, Int x, Int y) {
  return {Rational(std::move(g)), Rational(std::move(x)), Rational(std::move(y))};
}
inline std::vector<Rational> vec4(Int g, Int x, Int y, Int z) {
  return {Rational(std::move(g)), Rational(std::move(x)), Rational(std::move(y)), Rational(std::move(z))};
}

}  // namespace detail

// Decomposition and inertia data per the structure lemmas of the three
// models.  checked=false ("exploration mode") skips the existence
// constraints so residue sweeps can cover every tuple.
inline GaloisModel build_model(const ModelParams& params, bool checked) {
  require_odd_prime(params.p);
  if (checked && !params.constraints_hold())
    throw std::invalid_argument("inconsistent parameters: no such CM-field model");

  using detail::vec3;
  using detail::vec4;
  const Int &a = params.a, &b = params.b, &c = params.c;
  GaloisModel m;
  m.params = params;
  m.ambient_rank = params.ambient_rank();

  switch (params.variant) {
    case Variant::Deg4NonGalois:
      m.generator_labels = {"gamma", "x", "y"};
      m.primes = {
          {"p", vec3(1, 0, 0), vec3(0, 1, 0)},
          {"q", vec3(1, a, b), vec3(0, 0, 1)},
          {"pbar", vec3(1, a - b, a + b), vec3(0, -1, 0)},
          {"qbar", vec3(1, -b, a), vec3(0, 0, -1)},
      };
      break;
    case Variant::Deg4Biquadratic:
      m.generator_labels = {"gamma", "x", "y"};
      m.primes = {
          {"p", vec3(1, 0, 0), vec3(0, 1, 0)},
          {"q", vec3(1, a, -a), vec3(0, 0, 1)},
          {"pbar", vec3(1, a + b, b - a), vec3(0, -1, 0)},
          {"qbar", vec3(1, b, b), vec3(0, 0, -1)},
      };
      break;
    case Variant::Deg6:
      m.generator_labels = {"gamma", "x", "y", "z"};
      m.primes = {
          {"p1", vec4(1, 0, 0, 0), vec4(0, 1, 0, 0)},
          {"p2bar", vec4(1, a, b, c), vec4(0, 0, 1, 0)},
          {"p3", vec4(1, a - c, a + b, b + c), vec4(0, 0, 0, 1)},
          {"p1bar", vec4(1, a - b - c, a + b - c, a + b + c), vec4(0, -1, 0, 0)},
          {"p2", vec4(1, -b - c, a - c, a + b), vec4(0, 0, -1, 0)},
          {"p3bar", vec4(1, -b, -c, a), vec4(0, 0, 0, -1)},
      };
      break;
  }
  return m;
}

inline Lattice inertia_lattice(const GaloisModel& m, const std::string& label) {
  const auto& d = m.local_data(label);
  return Lattice::from_generators(m.ambient_rank, {d.inertia_gen}, m.prime());
}

inline Lattice decomposition_lattice(const GaloisModel& m, const std::string& label) {
  const auto& d = m.local_data(label);
  return Lattice::from_generators(m.ambient_rank, {d.inertia_gen, d.second_gen}, m.prime());
}

inline Lattice sum_of_decomposition_lattices(const GaloisModel& m) {
  Lattice s = Lattice::zero(m.ambient_rank, m.prime());
  for (const auto& pr : m.primes) s = sum(s, decomposition_lattice(m, pr.label));
  return s;
}

inline Lattice sum_of_inertia_lattices(const GaloisModel& m) {
  Lattice s = Lattice::zero(m.ambient_rank, m.prime());
  for (const auto& pr : m.primes) s = sum(s, inertia_lattice(m, pr.label));
  return s;
}

enum class Automorphism { Sigma, Tau, J };

// Column j is the exponent vector of the image of the j-th generator.
inline Matrix automorphism_matrix(const GaloisModel& m, Automorphism which) {
  const Int &a = m.params.a, &b = m.params.b, &c = m.params.c;
  const long long p = m.prime();
  auto from_cols = [&](const std::vector<std::vector<Rational>>& cols) {
    return Matrix::from_columns(cols, m.ambient_rank, p);
  };
  using detail::vec3;
  using detail::vec4;

  switch (m.params.variant) {
    case Variant::Deg4NonGalois: {
      Matrix sigma = from_cols({vec3(1, a, b), vec3(0, 0, 1), vec3(0, -1, 0)});
      switch (which) {
        case Automorphism::Sigma: return sigma;
        case Automorphism::Tau: throw std::invalid_argument("tau is only defined for the biquadratic model");
        case Automorphism::J: return sigma * sigma;
      }
      break;
    }
    case Variant::Deg4Biquadratic: {
      Matrix sigma = from_cols({vec3(1, a, -a), vec3(0, 0, 1), vec3(0, 1, 0)});
      Matrix tau = from_cols({vec3(1, b, b), vec3(0, 0, -1), vec3(0, -1, 0)});
      switch (which) {
        case Automorphism::Sigma: return sigma;
        case Automorphism::Tau: return tau;
        case Automorphism::J: return sigma * tau;
      }
      break;
    }
    case Variant::Deg6: {
      Matrix sigma = from_cols({vec4(1, a, b, c), vec4(0, 0, 1, 0), vec4(0, 0, 0, 1), vec4(0, -1, 0, 0)});
      switch (which) {
        case Automorphism::Sigma: return sigma;
        case Automorphism::Tau: throw std::invalid_argument("tau is only defined for the biquadratic model");
        case Automorphism::J: return sigma * sigma * sigma;
      }
      break;
    }
  }
  throw std::logic_error("unreachable");
}

// dim_Fp A(k)/pA(k), straight from the inertia presentation.
inline std::size_t class_group_dim_mod_p(const GaloisModel& m) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& pr : m.primes) rows.push_back(pr.inertia_gen);
  Matrix rel = Matrix::from_rows(rows, m.ambient_rank, m.prime());
  return m.ambient_rank - rank_mod_p(rel);
}

struct AlphaBetaD {
  Scalar alpha;
  Scalar beta;
  long long d = 0;
  int sign = -1;
};

inline Lattice named_construction(const GaloisModel& m, const std::string& name,
                                  std::optional<long long> d_override = std::nullopt);

// Coordinates (alpha, beta) of the third inertia generator in the free
// rank-2 quotient ambient/DD on the basis (x, y), plus the shift d and the
// sign used by the case-(A) k_inf rule.
inline AlphaBetaD compute_alpha_beta_d(const GaloisModel& m) {
  if (m.params.variant != Variant::Deg6)
    throw std::invalid_argument("compute_alpha_beta_d: requires the degree-6 model");
  const long long p = m.prime();
  const Int &a = m.params.a, &b = m.params.b, &c = m.params.c;
  const Int plus = a + b + c, minus = a + b - c;
  if (c % p == 0 || plus % p == 0 || minus % p == 0)
    throw std::domain_error("hypothesis failure: need c, a+b+c, a+b-c nonzero mod p");

  Lattice dd = named_construction(m, "DD");
  if (dd.rank() != 2) throw std::domain_error("hypothesis failure: DD does not have rank 2");
  std::vector<Rational> ex = {0, 1, 0, 0}, ey = {0, 0, 1, 0};
  Matrix sys = Matrix::from_columns({ex, ey, dd.generators().column(0), dd.generators().column(1)}, 4, p);
  Rational det = determinant(sys).value();
  if (det == 0) throw std::domain_error("hypothesis failure: singular coordinate system");
  const auto& target = m.local_data("p3").inertia_gen;
  auto cramer = [&](std::size_t col) -> Rational {
    Matrix s = sys;
    for (std::size_t i = 0; i < 4; ++i) s.at(i, col) = target[i];
    return Rational(determinant(s).value() / det);
  };
  Rational alpha = cramer(0), beta = cramer(1);
  if (!is_p_integral(alpha, p) || !is_p_integral(beta, p))
    throw std::domain_error("hypothesis failure: quotient coordinates not p-integral");

  AlphaBetaD r{Scalar(alpha, p), Scalar(beta, p), 0, (a + b) % p == 0 ? 1 : -1};
  Valuation va = valuation(alpha, p), vb = valuation(beta, p);
  if (va == vb && alpha != 0) {
    Rational ratio = beta / alpha;
    long long d = 0;
    while (Rational(r.sign + Int(p) * d) == ratio) ++d;
    r.d = d;
  }
  return r;
}

// The catalogue of subgroups the structure lemmas name.  Names are part of
// the CLI contract; see the README for the full list.
inline Lattice named_construction(const GaloisModel& m, const std::string& name,
                                  std::optional<long long> d_override) {
  const long long p = m.prime();
  const std::size_t n = m.ambient_rank;
  const Int &a = m.params.a, &b = m.params.b, &c = m.params.c;
  auto L = [&](const std::vector<std::vector<Rational>>& gens) { return Lattice::from_generators(n, gens, p); };
  auto D = [&](const std::string& lbl) { return decomposition_lattice(m, lbl); };
  auto I = [&](const std::string& lbl) { return inertia_lattice(m, lbl); };
  using detail::vec3;
  using detail::vec4;

  if (name == "k") return Lattice::full(n, p);
  if (name == "k_cyc") {
    std::vector<std::vector<Rational>> gens;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Rational> e(n, Rational(0));
      e[i] = 1;
      gens.push_back(std::move(e));
    }
    return L(gens);
  }

  if (m.params.variant != Variant::Deg6) {
    const bool ng = m.params.variant == Variant::Deg4NonGalois;
    const Int crit = ng ? Int(a + b) : Int(a - b);  // ord_p of this is the layer index n
    const std::vector<Rational> w = ng ? vec3(0, 1, -1) : vec3(0, 1, 1);

    if (name == "k_inf") return L({vec3(1, a, 0), w});
    if (name == "L_prime") {
      std::vector<Rational> wc = w;
      for (auto& x : wc) x *= Rational(crit);
      return L({vec3(1, a, 0), wc});
    }
    if (name == "P_inf") return D("p");
    if (name == "Q_inf") return D("q");
    if (name == "P_n") return sum(D("p"), D("pbar"));
    if (name == "Q_n") return sum(D("q"), D("qbar"));
    if (name == "k_1") return sum(I("p"), I("q"));
    if (name == "k_1_bar") return sum(I("pbar"), I("qbar"));
    if (name == "k_2") return I("p");
    if (name == "k_2_bar") return I("pbar");
    if (name == "N_p") return D("p");
    if (name == "N_p_bar") return D("pbar");
    throw std::invalid_argument("unknown construction: " + name);
  }

  if (name == "Z_11" || name == "P_inf") return sum(D("p1"), D("p1bar"));
  if (name == "Z_22" || name == "Q_inf") return sum(D("p2"), D("p2bar"));
  if (name == "Z_33") return sum(D("p3"), D("p3bar"));
  if (name == "DD") return intersect(sum(D("p1"), D("p1bar")), sum(D("p2"), D("p2bar")));
  if (name == "M") return sum(named_construction(m, "DD"), I("p3"));
  if (name == "T_1") return I("p1");
  if (name == "T_2") return I("p2");
  if (name == "T_3") return I("p3");
  if (name == "T_1bar") return I("p1bar");
  if (name == "T_2bar") return I("p2bar");
  if (name == "T_3bar") return I("p3bar");
  if (name == "T_11bar") return sum(I("p1"), I("p1bar"));
  if (name == "T_22bar") return sum(I("p2"), I("p2bar"));
  if (name == "T_33bar") return sum(I("p3"), I("p3bar"));
  if (name == "T_12bar") return sum(I("p1"), I("p2bar"));
  if (name == "T_2bar3") return sum(I("p2bar"), I("p3"));
  if (name == "T_13") return sum(I("p1"), I("p3"));
  if (name == "T_12bar3") return sum(sum(I("p1"), I("p2bar")), I("p3"));
  if (name == "T_2bar31bar") return sum(sum(I("p2bar"), I("p3")), I("p1bar"));
  if (name == "N_variant1") return sum(I("p1"), D("p2bar"));
  if (name == "N_bar_variant1") return sum(I("p1bar"), D("p2"));
  if (name == "N_variant2") return sum(D("p1"), I("p2bar"));
  if (name == "N_bar_variant2") return sum(D("p1bar"), I("p2"));
  if (name == "P_m_1") return sum(D("p1"), D("p2"));
  if (name == "Q_m_1") return sum(D("p1"), D("p3"));

  if (name == "R_m_1" || name == "R_m_2" || name == "R_m_3" || name == "L_prime_m" || name == "k_m") {
    if (a + b == 0 || (a + b) % p != 0) throw std::domain_error("construction undefined: m = 0");
    const Int s = a + b;
    if (name == "R_m_1") return L({vec4(1, 0, 0, 0), vec4(0, 1, 0, 0), vec4(0, 0, 1, -1), vec4(0, 0, 0, s)});
    if (name == "R_m_2") return L({vec4(1, a - c, 0, 0), vec4(0, 0, 1, 0), vec4(0, 1, 0, 1), vec4(0, s, 0, 0)});
    if (name == "R_m_3") return L({vec4(1, a - c, 0, 0), vec4(0, 1, -1, 0), vec4(0, 0, 0, 1), vec4(0, 0, s, 0)});
    if (name == "L_prime_m")
      return L({vec4(1, a - c, 0, 0), vec4(0, 1, -1, 1), vec4(0, s, 0, 0), vec4(0, 0, s, 0), vec4(0, 0, 0, s)});
    return L({vec4(1, a - c, 0, 0), vec4(0, 1, -1, 1), vec4(0, 1, 1, 0), vec4(0, s, 0, 0), vec4(0, 0, s, 0),
              vec4(0, 0, 0, s)});
  }

  if (name == "k_inf") {
    const Int plus = a + b + c, minus = a + b - c;
    const bool knot_zero = ((2 * (a + b) * ((a + b) * (a + b) + 3 * c * c)) % p) == 0;
    if (!knot_zero) throw std::domain_error("construction undefined: knot criterion is a unit, no k_inf case applies");
    if ((a + b) % p == 0 && class_group_dim_mod_p(m) <= 1) {
      // case (B): the J-stable presentation <J(gamma)gamma, xy^{-1}z, xy>
      return L({vec4(2, a - b - c, a + b - c, a + b + c), vec4(0, 1, -1, 1), vec4(0, 1, 1, 0)});
    }
    // case (A): <DD, xy^{sign + pd}>
    AlphaBetaD abd = compute_alpha_beta_d(m);
    long long d = d_override.value_or(abd.d);
    Rational exp = Rational(abd.sign) + Rational(Int(p) * d);
    if (d_override && Rational(abd.beta.value() / abd.alpha.value()) == exp && abd.alpha.value() != 0 &&
        valuation(abd.alpha.value(), p) == valuation(abd.beta.value(), p))
      throw std::domain_error("construction undefined: supplied d collides with beta/alpha");
    Lattice dd = named_construction(m, "DD");
    std::vector<std::vector<Rational>> gens;
    for (std::size_t j = 0; j < dd.rank(); ++j) gens.push_back(dd.generators().column(j));
    gens.push_back({Rational(0), Rational(1), exp, Rational(0)});
    return L(gens);
  }

  throw std::invalid_argument("unknown construction: " + name);
}

inline std::vector<std::string> construction_catalogue(Variant v) {
  if (v != Variant::Deg6)
    return {"k", "k_cyc", "k_inf", "L_prime", "P_inf", "Q_inf", "P_n", "Q_n",
            "k_1", "k_1_bar", "k_2", "k_2_bar", "N_p", "N_p_bar"};
  return {"k",      "k_cyc",  "Z_11",   "Z_22",   "Z_33",        "P_inf",         "Q_inf",
          "DD",     "M",      "T_1",    "T_2",    "T_3",         "T_1bar",        "T_2bar",
          "T_3bar", "T_11bar", "T_22bar", "T_33bar", "T_12bar",  "T_2bar3",       "T_13",
          "T_12bar3", "T_2bar31bar", "N_variant1", "N_bar_variant1", "N_variant2", "N_bar_variant2",
          "P_m_1",  "Q_m_1",  "R_m_1",  "R_m_2",  "R_m_3",       "L_prime_m",     "k_m",
          "k_inf"};
}

}  // namespace plocal
