#include "vnlab/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace vnlab {
namespace {

// Pass/fail records of one run, in the order they were evaluated.
class Checks {
 public:
  void within(const std::string& id, const std::string& statement, double residual, double tolerance) {
    add(id, statement, residual <= tolerance, {{"residual", residual}, {"tolerance", tolerance}});
  }
  void at_least(const std::string& id, const std::string& statement, double value, double threshold) {
    add(id, statement, value >= threshold, {{"value", value}, {"threshold", threshold}});
  }
  void holds(const std::string& id, const std::string& statement, bool ok, Json detail = Json::object()) {
    add(id, statement, ok, std::move(detail));
  }

  Json json = Json::array();
  std::vector<std::string> failures;

 private:
  void add(const std::string& id, const std::string& statement, bool ok, Json detail) {
    Json rec = {{"id", id}, {"statement", statement}, {"passed", ok}};
    for (auto& [k, v] : detail.items()) rec[k] = v;
    json.push_back(std::move(rec));
    if (!ok) failures.push_back(id);
  }
};

bool selected(const std::vector<std::string>& analyses, const std::string& name) {
  return std::find(analyses.begin(), analyses.end(), name) != analyses.end();
}

double spectral_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : Eigen::JacobiSVD<Matrix>(m).singularValues()[0];
}

Json witness_json(const AxiomVerdict& v, const GroupAction& a) {
  Json out = {{"holds", v.holds}};
  if (v.witness) {
    Json set = Json::array();
    for (auto x : v.witness->set.members()) set.push_back(a.space().label(x));
    out["witness"] = {{"element", a.group().label(v.witness->element)}, {"set", std::move(set)}};
  }
  return out;
}

Json scenario_echo(const Scenario& s, const RunOptions& opts, const std::vector<std::string>& analyses) {
  Json echo = {{"name", s.name}, {"kind", to_string(s.kind)}};
  if (s.action) {
    const auto& space = s.action->space();
    echo["points"] = space.labels();
    Json masses = Json::array();
    for (std::size_t x = 0; x < space.size(); ++x) {
      if (space.has_exact_masses()) {
        masses.push_back(to_string(space.exact_mass(x)));
      } else {
        masses.push_back(space.mass(x));
      }
    }
    echo["masses"] = std::move(masses);
    echo["group_elements"] = s.action->group().labels();
  }
  if (s.kind == ScenarioKind::Tower) echo["levels"] = s.levels;
  if (s.kind == ScenarioKind::Affine) echo["depth"] = s.depth;
  if (s.measurement) echo["measurement"] = {{"N", s.measurement->n}, {"weights", s.measurement->weights}};
  echo["analyses"] = analyses;
  echo["tolerance"] = s.tol.eps;
  echo["seed"] = s.seed;
  echo["normalization"] = to_string(s.normalization);
  echo["cap"] = opts.cap;
  return echo;
}

// ---- sections

void entangler_section(const MeasurementScenario& m, Json& out, Checks& checks) {
  const Matrix u = entangler(m.n);
  const auto ent = entangle(m);
  const auto sd = schmidt(ent.state, static_cast<Eigen::Index>(m.n), static_cast<Eigen::Index>(m.n));
  std::vector<double> sorted = m.weights;
  std::sort(sorted.rbegin(), sorted.rend());
  double weight_residual = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    weight_residual = std::max(weight_residual, std::abs(sd.weights[static_cast<Eigen::Index>(i)] - sorted[i]));
  }
  bool permutation = true;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    permutation = permutation && u.row(i).cwiseAbs().sum() == 1.0 && u.col(i).cwiseAbs().sum() == 1.0;
  }
  std::vector<double> weights(sd.weights.data(), sd.weights.data() + sd.weights.size());
  out = {{"N", m.n}, {"transition_residual", ent.residual}, {"schmidt_weights", weights},
         {"schmidt_reconstruction", sd.residual}};
  checks.holds("entangler_permutation", "the pointer entangler sum_n P_n (x) T^n is a permutation matrix", permutation);
  checks.within("entangler_unitary", "the pointer entangler is unitary",
                max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())), 1e-13);
  checks.within("entangle_transition", "U maps sum sqrt(w_n)|n>|0> to sum sqrt(w_n)|n>|n>", ent.residual, 1e-13);
  checks.within("schmidt_weights", "Schmidt weights of the entangled state equal the input weights", weight_residual,
                1e-12);
}

struct ActionContext {
  const Scenario& s;
  const RunOptions& opts;
  const std::vector<std::string>& analyses;
  Json& report;
  Checks& checks;
};

void run_action(const ActionContext& ctx) {
  const Scenario& s = ctx.s;
  const GroupAction& action = *s.action;
  Checks& checks = ctx.checks;
  const double eps = s.tol.eps;
  Rng rng(s.seed);

  const AxiomVerdict free = is_free(action);
  const AxiomVerdict ergodic = is_ergodic(action);
  const AxiomVerdict invariant = is_measure_invariant(action);
  const bool free_ergodic = free.holds && ergodic.holds;
  if (selected(ctx.analyses, "axioms")) {
    ctx.report["axioms"] = {{"free", witness_json(free, action)},
                            {"ergodic", witness_json(ergodic, action)},
                            {"measure_invariant", witness_json(invariant, action)}};
  }
  const bool needs_algebra = std::any_of(ctx.analyses.begin(), ctx.analyses.end(), [](const std::string& a) {
    return a == "algebra" || a == "operators" || a == "alpha" || a == "comparability" || a == "classification" ||
           a == "measurement";
  });
  if (!needs_algebra) return;

  const CrossedProduct cp(action, s.tol, ctx.opts.cap);
  const HybridSpace& hs = cp.space();
  const VNAlgebra& F = cp.F();
  const VNAlgebra& Fp = cp.F_prime();
  const auto n = static_cast<Eigen::Index>(hs.dimension());
  const Vector phi = cp.separating_function();
  const bool support_invariant = static_cast<bool>(is_measure_invariant(hs.action()));

  if (selected(ctx.analyses, "algebra")) {
    const AlgebraReport fr = describe(F);
    const AlgebraReport fpr = describe(Fp);
    Json sec = {{"hybrid_dimension", n}, {"F", to_json(fr)}, {"F_prime", to_json(fpr)}};
    const VNAlgebra bicomm = commutant(commutant(F));
    checks.within("bicommutant", "F'' equals F as a span",
                  bicomm.dimension() == F.dimension() ? span_distance(bicomm, F) : 1.0, eps);
    double coupling = 0.0;
    for (const auto& a : F.generators())
      for (const auto& b : Fp.generators()) coupling = std::max(coupling, max_abs(commutator(a, b)));
    checks.within("coupled_commute", "generators of F commute with generators of F'", coupling, eps);
    if (free_ergodic) {
      const VNAlgebra comm = commutant(F);
      const VNAlgebra joined = join(F, Fp);
      const VNAlgebra met = meet(F, Fp);
      sec["commutant_dimension"] = comm.dimension();
      sec["join_dimension"] = joined.dimension();
      sec["meet_dimension"] = met.dimension();
      checks.holds("factor_F", "F is a factor: its center is the scalars", fr.is_factor,
                   {{"center_dimension", fr.center_dimension}});
      checks.holds("factor_F_prime", "F' is a factor", fpr.is_factor, {{"center_dimension", fpr.center_dimension}});
      checks.within("commutant_is_QFQ", "the commutant of F equals Qbar F Qbar",
                    comm.dimension() == F.dimension() ? span_distance(comm, F.conjugated(cp.Q())) : 1.0, eps);
      checks.holds("join_full", "F and F' jointly generate every operator on the hybrid space",
                   joined.dimension() == n * n, {{"dimension", joined.dimension()}, {"expected", n * n}});
      checks.holds("meet_scalars", "F and F' intersect in the scalars", met.dimension() == 1,
                   {{"dimension", met.dimension()}});
      checks.holds("dimension_count", "dim F = |G| |X+| for a free ergodic action",
                   F.dimension() == static_cast<Eigen::Index>(hs.group_order() * hs.points()),
                   {{"dimension", F.dimension()}});
      double smallest = std::numeric_limits<double>::infinity();
      for (std::size_t x = 0; x < hs.points(); ++x)
        for (std::size_t y = 0; y < hs.points(); ++y) {
          const Matrix p = pbar(hs, Subset::singleton(hs.points(), x));
          const Matrix q = pbar_prime(hs, Subset::singleton(hs.points(), y));
          smallest = std::min(smallest, spectral_norm(p * q));
        }
      checks.at_least("crossed_projectors", "nonzero projectors Pbar_{x} in F and Pbar'_{y} in F' never multiply to 0",
                      smallest, 1e3 * eps);
    }
    ctx.report["algebra"] = std::move(sec);
  }

  if (selected(ctx.analyses, "operators")) {
    const Matrix& q = cp.Q();
    const Matrix id = Matrix::Identity(n, n);
    double unitarity = max_abs(q.adjoint() * q - id);
    double conj = max_abs(q * lbar(hs, phi) * q - lbar_prime(hs, phi));
    double automorphism = 0.0;
    double covariance = 0.0;
    for (std::size_t g = 0; g < hs.group_order(); ++g) {
      const Matrix u = ubar(hs, g);
      const Matrix up = ubar_prime(hs, g);
      unitarity = std::max({unitarity, max_abs(u.adjoint() * u - id), max_abs(up.adjoint() * up - id)});
      conj = std::max(conj, max_abs(q * u * q - up));
      Vector shifted(phi.size());
      for (std::size_t x = 0; x < hs.points(); ++x) shifted[static_cast<Eigen::Index>(x)] = phi[static_cast<Eigen::Index>(hs.action().act(g, x))];
      covariance = std::max(covariance, max_abs(u * lbar(hs, phi) * u.adjoint() - lbar(hs, shifted)));
      for (std::size_t x = 0; x < hs.points(); ++x) {
        const Subset sx = Subset::singleton(hs.points(), x);
        const Subset image = hs.action().act(hs.group().inverse(g), sx);
        automorphism = std::max(automorphism, max_abs(u * pbar(hs, sx) * u.adjoint() - pbar(hs, image)));
      }
    }
    checks.within("unitaries", "Ubar_g, Ubar'_g and Qbar are unitary", unitarity, 1e-13);
    checks.within("q_involution", "Qbar is a self-adjoint involution",
                  std::max(max_abs(q * q - id), max_abs(q - q.adjoint())), 1e-13);
    checks.within("q_exchanges_sides", "Qbar Ubar_g Qbar = Ubar'_g and Qbar Lbar_phi Qbar = Lbar'_phi", conj, 1e-13);
    checks.within("automorphism_covariance", "Ubar_g Lbar_phi Ubar_g^dagger = Lbar_{phi o g}", covariance, 1e-13);
    checks.within("projector_transport", "Ubar_g Pbar_S Ubar_g^dagger = Pbar_{g^-1 S} for every singleton S",
                  automorphism, 1e-13);
    ctx.report["operators"] = {{"unitarity_residual", unitarity}, {"side_exchange_residual", conj}};
  }

  if (selected(ctx.analyses, "alpha")) {
    Json sec = Json::object();
    double round_trip = 0.0;
    for (int k = 0; k < 20; ++k) {
      const Matrix a = F.random_element(rng);
      round_trip = std::max(round_trip, max_abs(cp.from_alpha(cp.to_alpha(a), AlgebraSide::F) - a) / std::max(1.0, max_abs(a)));
    }
    checks.within("alpha_round_trip", "from_alpha(to_alpha(A)) = A for random A in F", round_trip, 1e-12);
    sec["round_trip_residual"] = round_trip;
    if (support_invariant) {
      double conj = 0.0;
      double hom = 0.0;
      double adj = 0.0;
      for (int k = 0; k < 20; ++k) {
        const AlphaFunction a = random_alpha(hs, rng);
        const AlphaFunction b = random_alpha(hs, rng);
        const Matrix fa = cp.from_alpha(a, AlgebraSide::F);
        const Matrix fb = cp.from_alpha(b, AlgebraSide::F);
        const Matrix prod = fa * fb;
        conj = std::max(conj, max_abs(cp.Q() * fa * cp.Q() - cp.from_alpha(a, AlgebraSide::Fprime)));
        hom = std::max(hom, max_abs(cp.from_alpha(alpha_product(hs, a, b), AlgebraSide::F) - prod) / std::max(1.0, max_abs(prod)));
        adj = std::max(adj, max_abs(cp.from_alpha(alpha_adjoint(hs, a), AlgebraSide::F) - fa.adjoint()));
      }
      checks.within("alpha_sides", "Qbar from_alpha(alpha, F) Qbar = from_alpha(alpha, F')", conj, 1e-13);
      checks.within("alpha_homomorphism", "from_alpha(alpha . beta) = from_alpha(alpha) from_alpha(beta)", hom, 1e-13);
      checks.within("alpha_adjoint", "from_alpha(alpha^dagger) = from_alpha(alpha)^dagger", adj, 1e-13);
      sec["homomorphism_residual"] = hom;
    } else {
      sec["note"] = "alpha product and adjoint are defined for invariant measures only";
    }
    ctx.report["alpha"] = std::move(sec);
  }

  std::optional<Factor> factor;
  if (free_ergodic && (selected(ctx.analyses, "comparability") || selected(ctx.analyses, "classification"))) {
    factor = Factor::from(F);
  }

  if (selected(ctx.analyses, "comparability")) {
    if (!factor) {
      ctx.report["comparability"] = {{"skipped", "F is only guaranteed to be a factor for free ergodic actions"}};
    } else {
      std::vector<Matrix> projectors;
      std::vector<Json> names;
      for (std::size_t k = 0; k <= hs.points(); ++k) {
        Subset sk(hs.points());
        for (std::size_t x = 0; x < k; ++x) sk.insert(x);
        projectors.push_back(pbar(hs, sk));
        names.push_back(to_json(sk, hs.space()));
      }
      Json table = Json::array();
      bool consistent = true;
      for (std::size_t i = 0; i < projectors.size(); ++i) {
        for (std::size_t j = 0; j < projectors.size(); ++j) {
          const Comparison c = compare(*factor, projectors[i], projectors[j]);
          const Fraction d1 = exact_dimension(*factor, projectors[i], s.normalization);
          const Fraction d2 = exact_dimension(*factor, projectors[j], s.normalization);
          const Order expected = d1 < d2 ? Order::Precedes : (d2 < d1 ? Order::Succeeds : Order::Equivalent);
          consistent = consistent && c.order == expected;
          Json rec = to_json(c);
          rec["p1"] = names[i];
          rec["p2"] = names[j];
          rec["D1"] = to_string(d1);
          rec["D2"] = to_string(d2);
          table.push_back(std::move(rec));
        }
      }
      checks.holds("comparability_order", "compare verdicts follow the order of the relative dimensions", consistent);
      Json sec = {{"normalization", to_string(s.normalization)}, {"table", std::move(table)}};
      if (support_invariant) {
        double agreement = 0.0;
        for (int k = 0; k < 10; ++k) {
          const Matrix p = random_projector(F, rng);
          agreement = std::max(agreement, std::abs(spectral_dimension(cp, p, s.normalization) - dimension(*factor, p, s.normalization)));
        }
        checks.within("dimension_routes", "c * int chi(1; x) dmu equals the trace-normalised dimension", agreement, 1e-10);
        sec["route_agreement"] = agreement;
      }
      ctx.report["comparability"] = std::move(sec);
    }
  }

  if (selected(ctx.analyses, "classification")) {
    if (!free_ergodic) {
      ctx.report["classification"] = {{"verdict", "not_classified"},
                                      {"reason", free.holds ? "action is not ergodic" : "action is not free"}};
    } else {
      const TypeReport tr = classify(action, s.tol, ctx.opts.cap);
      ctx.report["classification"] = to_json(tr);
      if (support_invariant) {
        std::vector<Fraction> expected;
        for (std::size_t k = 0; k <= hs.points(); ++k) expected.emplace_back(static_cast<std::int64_t>(k));
        checks.holds("type_I_n", "an invariant free ergodic action yields type I_n with n = |X+|",
                     tr.verdict == Verdict::In && tr.n == hs.points(), {{"verdict", tr.label()}});
        checks.holds("type_I_spectrum", "the dimension spectrum is exactly {0, 1, ..., n}", tr.dimension_spectrum == expected);
      } else {
        const bool demo = tr.demonstration && tr.demonstration->order == Order::Equivalent &&
                          tr.demonstration->measure_p != tr.demonstration->measure_q;
        checks.holds("type_III_obstruction", "a non-invariant measure yields the type III obstruction with witnesses",
                     tr.verdict == Verdict::IIIObstruction && !tr.witnesses.empty(), {{"verdict", tr.label()}});
        checks.holds("type_III_demonstration",
                     "equivalent projectors carry spectral sets of different measure", demo);
      }
    }
  }

  if (selected(ctx.analyses, "measurement")) {
    Json sec = Json::object();
    const double total = hs.space().total_mass();
    if (support_invariant && std::abs(total - 1.0) <= 1e-12) {
      const TracialReport tr = tracial_check(cp, 100, s.seed);
      sec["tracial"] = to_json(tr);
      checks.within("tracial_commutator", "<Omega|AB|Omega> = <Omega|BA|Omega> on F", tr.commutator_residual, 1e-11);
      checks.within("tracial_trace", "<Omega|A|Omega> equals the normalised matrix trace on F", tr.trace_residual, 1e-11);
      checks.within("tracial_unitary", "<Omega|U A U^dagger|Omega> = <Omega|A|Omega> for unitary U in F",
                    tr.unitary_residual, 1e-11);
      if (is_abelian(F)) {
        sec["tracial"]["negative_control"] = "not applicable: every state is tracial on an abelian algebra";
      } else {
        checks.at_least("tracial_negative_control", "a skewed vector violates the trace property", tr.skewed_violation,
                        1e-3);
      }
    } else {
      sec["tracial"] = {{"skipped", support_invariant ? "mu(X) != 1" : "measure is not invariant"}};
    }
    if (support_invariant) {
      const CorrelationReport cr = correlation_check(cp, phi.real(), 20, s.seed);
      sec["correlated_pair"] = to_json(cr);
      const double scale = phi.real().cwiseAbs2().maxCoeff();
      checks.within("correlated_means", "Lbar_a and Lbar'_a share mean values on Qbar-symmetric states",
                    cr.mean_residual, 1e-12 * scale);
      checks.within("correlated_variances", "Lbar_a and Lbar'_a share second moments on Qbar-symmetric states",
                    cr.second_moment_residual, 1e-12 * scale);
      checks.within("correlated_commute", "Lbar_a commutes with Lbar'_a", cr.commutator, eps);
    }
    Json states = Json::array();
    for (std::size_t k = 0; k < s.states.size(); ++k) {
      const Vector& raw = s.states[k];
      if (raw.size() != n) {
        throw Error(ErrorKind::SchemaError, "state " + std::to_string(k) + " has " + std::to_string(raw.size()) +
                                                " entries, expected " + std::to_string(n));
      }
      const HybridVector omega = hs.from_raw(raw);
      if (std::abs(omega.norm() - 1.0) > 1e-8) {
        throw Error(ErrorKind::SchemaError, "state " + std::to_string(k) + " is not normalised");
      }
      const AlphaFunction alpha = random_alpha(hs, rng);
      const Matrix a = cp.from_alpha(alpha, AlgebraSide::F);
      const Matrix ap = cp.from_alpha(alpha, AlgebraSide::Fprime);
      const Complex direct = expectation(omega, a);
      const double routes = std::max({std::abs(expectation_blocks(hs, raw, a) - direct),
                                      std::abs(expectation_alpha_F(hs, raw, alpha) - direct),
                                      std::abs(expectation_alpha_Fprime(hs, raw, alpha) - expectation(omega, ap))});
      const DensityRecord d = density_matrix(hs, raw);
      double density_residual = std::abs(density_expectation(hs, d, phi) - expectation(omega, lbar(hs, phi)));
      if (support_invariant) density_residual = std::max(density_residual, std::abs(density_expectation(hs, d, alpha) - direct));
      Json rec = {{"index", k}, {"expectation_F", to_json(direct)}, {"expectation_F_prime", to_json(expectation(omega, ap))}};
      rec["route_residual"] = routes;
      rec["density_residual"] = density_residual;
      states.push_back(std::move(rec));
      checks.within("expectation_routes_" + std::to_string(k), "block, alpha-F and alpha-F' expectation formulas agree",
                    routes, 1e-12);
      checks.within("density_" + std::to_string(k), "the density record reproduces the expectation values",
                    density_residual, 1e-12);
    }
    if (!states.empty()) sec["states"] = std::move(states);
    if (s.measurement) {
      Json ent;
      entangler_section(*s.measurement, ent, checks);
      sec["entangler"] = std::move(ent);
    }
    ctx.report["measurement"] = std::move(sec);
  }
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaError:
    case ErrorKind::InvalidStructure:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::IOFailure: return kExitSchema;
    case ErrorKind::CapExceeded: return kExitCap;
    default: return kExitNumerical;
  }
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  Scenario s = scenario;
  if (options.tolerance) s.tol.eps = *options.tolerance;
  if (options.seed) s.seed = *options.seed;
  if (options.normalization) s.normalization = *options.normalization;
  std::vector<std::string> analyses = options.analyses ? *options.analyses : s.analyses;
  if (analyses.empty()) analyses = default_analyses(s.kind);

  Json report = {{"schema", "report_v1"}, {"scenario", scenario_echo(s, options, analyses)}};
  Checks checks;
  switch (s.kind) {
    case ScenarioKind::Action: run_action({s, options, analyses, report, checks}); break;
    case ScenarioKind::Tower: {
      const TypeReport tr = tower_analysis(s.tower, s.levels, options.cap);
      report["classification"] = to_json(tr);
      bool meshes = true;
      bool identity = true;
      Fraction previous(0);
      for (const auto& l : tr.levels) {
        const auto n = static_cast<std::int64_t>(l.n);
        if (s.tower == TowerKind::II1) {
          meshes = meshes && l.mesh == Fraction(1, n);
          identity = identity && l.identity_dimension == Fraction(1);
        } else {
          identity = identity && l.identity_dimension == Fraction(n) && previous < l.identity_dimension;
          previous = l.identity_dimension;
        }
      }
      if (s.tower == TowerKind::II1) {
        checks.holds("tower_mesh", "the spectrum mesh at level n is exactly 1/n", meshes);
        checks.holds("tower_identity", "D(I) = 1 at every level", identity);
      } else {
        checks.holds("tower_identity", "D(I) = n grows strictly across levels", identity);
      }
      break;
    }
    case ScenarioKind::Affine: {
      const TypeReport tr = affine_analogue(s.depth, options.cap);
      report["classification"] = to_json(tr);
      std::vector<bool> seen(2 * s.depth, false);
      for (const auto& w : tr.witnesses) seen[w.point] = true;
      checks.holds("affine_witnesses", "every singleton is rescaled by some group element",
                   std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
      checks.holds("affine_demonstration", "the demonstration pair is equivalent with measure ratio exactly 2",
                   tr.demonstration && tr.demonstration->order == Order::Equivalent &&
                       tr.demonstration->exact_ratio == Fraction(2));
      break;
    }
    case ScenarioKind::Measurement: {
      Json ent;
      entangler_section(*s.measurement, ent, checks);
      report["measurement"] = {{"entangler", std::move(ent)}};
      break;
    }
  }
  report["checks"] = checks.json;
  report["status"] = checks.failures.empty() ? "pass" : "fail";
  RunResult result;
  result.exit_code = checks.failures.empty() ? kExitOk : kExitNumerical;
  result.failures = checks.failures;
  result.report = std::move(report);
  return result;
}

Json error_report(const std::string& source, const Error& e) {
  return {{"schema", "report_v1"},
          {"scenario", {{"source", source}}},
          {"status", "error"},
          {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}, {"exit_code", exit_code_for(e.kind())}}}};
}

}  // namespace vnlab
