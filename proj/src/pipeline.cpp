#include <algorithm>
#include <string>

#include "newtpot/errors.hpp"
#include "newtpot/problem.hpp"
#include "newtpot/quadrature.hpp"

namespace newtpot {

namespace {

bool is_point_kind(KernelKind k) {
  return k == KernelKind::PointPotential || k == KernelKind::PointForce;
}

bool is_force_kind(KernelKind k) {
  return k == KernelKind::Force || k == KernelKind::PointForce;
}

void check_cuboid(const CuboidSpec& c, const char* name, int dim) {
  if (c.dim() != dim) throw InvalidSpec(std::string(name) + " has wrong dimension");
  for (const auto& [a, b] : c.bounds)
    if (a > b) throw InvalidSpec(std::string(name) + " has inverted bounds");
}

void check_multi_index(const std::vector<int>& idx, const char* name, int dim) {
  if (static_cast<int>(idx.size()) != dim)
    throw InvalidSpec(std::string(name) + " has wrong length");
  for (int v : idx)
    if (v < 0) throw InvalidSpec(std::string(name) + " must be nonnegative");
}

// Raw term count of the expanded product, saturating.
double product_size_estimate(const FactorSet& fs) {
  double total = 1;
  for (std::size_t i = 0; i < fs.factors.size(); ++i) {
    for (int k = 0; k < fs.multiplicity[i]; ++k) {
      total *= static_cast<double>(fs.factors[i].size());
      if (total > 1e9) return total;
    }
  }
  return total;
}

constexpr double kMaxSymbolicTerms = 200000;

SigmaExpr expanded_product(const FactorSet& fs) {
  SigmaExpr g;
  bool first = true;
  for (std::size_t i = 0; i < fs.factors.size(); ++i) {
    for (int k = 0; k < fs.multiplicity[i]; ++k) {
      g = first ? fs.factors[i] : product(g, fs.factors[i]);
      first = false;
    }
  }
  if (first) throw Error("problem has no factors");
  if (fs.rho != 0) g = attach_gaussian_prefactor(g, fs.rho);
  if (fs.r3_weight) g = g.r3_weighted();
  return g;
}

// The r^-3 integral converges iff the interiors are disjoint.
bool r3_integral_converges(const ProblemSpec& spec) {
  for (int j = 0; j < spec.dim; ++j) {
    const auto& [a, b] = spec.q.bounds[j];
    const auto& [ap, bp] = spec.qp.bounds[j];
    if (b <= ap || bp <= a) return true;
  }
  return false;
}

}  // namespace

void validate(const ProblemSpec& spec) {
  if (spec.dim < 1) throw InvalidSpec("dimension must be >= 1");
  check_cuboid(spec.q, "Q", spec.dim);
  check_multi_index(spec.n, "n", spec.dim);

  if (is_point_kind(spec.kind)) {
    if (static_cast<int>(spec.point.size()) != spec.dim)
      throw InvalidSpec("field point has wrong dimension");
  } else {
    check_cuboid(spec.qp, "Q'", spec.dim);
    check_multi_index(spec.m, "m", spec.dim);
  }
  if (is_force_kind(spec.kind) && (spec.axis < 1 || spec.axis > spec.dim))
    throw InvalidSpec("force axis out of range");

  if (spec.rho < 0) throw InvalidSpec("rho must be nonnegative");
  if (spec.rho != 0 && spec.dim > 2)
    throw InvalidSpec("rho applies to dimensions 1 and 2 only");
  if (spec.dim == 1 && spec.rho == 0 && !is_point_kind(spec.kind) &&
      spec.kind != KernelKind::R3Potential) {
    const auto& [a, b] = spec.q.bounds[0];
    const auto& [ap, bp] = spec.qp.bounds[0];
    if (std::max(a, ap) <= std::min(b, bp))
      throw InvalidSpec("1D intervals overlap or touch: rho > 0 required");
  }
}

namespace {

std::vector<SigmaExpr> per_axis_factors(const ProblemSpec& spec) {
  std::vector<SigmaExpr> raw;
  for (int j = 0; j < spec.dim; ++j) {
    const auto& [a, b] = spec.q.bounds[j];
    const bool on_axis = is_force_kind(spec.kind) && j == spec.axis - 1;
    if (is_point_kind(spec.kind)) {
      // translate the cuboid so that the field point is the origin;
      // the monomial weight applies in the translated frame
      Rational ta = a - spec.point[j], tb = b - spec.point[j];
      raw.push_back(on_axis ? point_force_factor(spec.n[j], ta, tb)
                            : point_factor(spec.n[j], ta, tb));
    } else {
      const auto& [ap, bp] = spec.qp.bounds[j];
      raw.push_back(on_axis ? force_factor(spec.n[j], spec.m[j], a, b, ap, bp)
                            : interval_factor(spec.n[j], spec.m[j], a, b, ap, bp));
    }
  }
  return raw;
}

}  // namespace

FactorSet build_factors(const ProblemSpec& spec) {
  validate(spec);
  FactorSet fs;
  fs.rho = spec.rho;
  fs.r3_weight = spec.kind == KernelKind::R3Potential;

  // Group identical factors so high-dimensional products can be powered.
  for (auto& f : per_axis_factors(spec)) {
    bool merged = false;
    for (std::size_t i = 0; i < fs.factors.size(); ++i) {
      if (fs.factors[i] == f) {
        ++fs.multiplicity[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      fs.factors.push_back(std::move(f));
      fs.multiplicity.push_back(1);
    }
  }
  return fs;
}

RunResult run(const ProblemSpec& spec) {
  validate(spec);
  FactorSet fs = build_factors(spec);
  RunResult result;

  if (product_size_estimate(fs) > kMaxSymbolicTerms) {
    result.fallback = numeric_fallback(spec);
    result.closed.status = ResultStatus::NumericOnly;
    result.total = {result.fallback->value, result.fallback->error_estimate};
    return result;
  }

  SigmaExpr g = expanded_product(fs);
  SigmaExpr gt = renormalize(g);
  auto classes = classify_terms(gt);
  for (const auto& [cls, expr] : classes)
    result.class_sizes[cls] = static_cast<int>(expr.size());

  const bool divergent_classes = classes.count(TerminalClass::DivergentAtInfinity) ||
                                 classes.count(TerminalClass::DivergentConstant);
  if (divergent_classes) {
    const bool converges =
        spec.kind != KernelKind::R3Potential || r3_integral_converges(spec);
    if (converges) {
      result.fallback = numeric_fallback(spec);
      result.closed.status = ResultStatus::NumericOnly;
      result.total = {result.fallback->value, result.fallback->error_estimate};
    } else {
      result.closed.status = ResultStatus::Divergent;
    }
    return result;
  }

  ClosedExpr closed;
  for (TerminalClass cls : {TerminalClass::I1, TerminalClass::I2, TerminalClass::I3}) {
    auto it = classes.find(cls);
    if (it == classes.end()) continue;
    for (const auto& [t, c] : it->second.terms()) closed.atoms.push_back(translate_term(t, c));
  }
  if (auto it = classes.find(TerminalClass::LogLedger); it != classes.end()) {
    auto [atoms, ledger] = ledger_resolve(it->second);
    closed.atoms.insert(closed.atoms.end(), atoms.begin(), atoms.end());
    closed.ledger = ledger;
  }
  if (auto it = classes.find(TerminalClass::ResidualConvergent); it != classes.end()) {
    for (const auto& [t, c] : it->second.terms()) closed.residuals.push_back({t, c});
  }

  result.closed = canonicalize(closed);
  if (result.closed.status != ResultStatus::Divergent)
    result.total = evaluate_numeric(result.closed, 13);
  return result;
}

std::string dump_integrand(const ProblemSpec& spec, DumpStage stage, EmitFormat format) {
  validate(spec);
  if (format == EmitFormat::Json) throw InvalidSpec("integrand dumps are text or latex");
  FactorSet fs = build_factors(spec);
  auto render = [&](const SigmaExpr& e) {
    return format == EmitFormat::Text ? sigma_to_string(e) : sigma_to_latex(e);
  };

  if (stage == DumpStage::Factors) {
    std::string out;
    const std::vector<SigmaExpr> axis_factors = per_axis_factors(spec);
    for (int j = 0; j < spec.dim; ++j) {
      const bool on_axis = is_force_kind(spec.kind) && j == spec.axis - 1;
      std::string name = is_point_kind(spec.kind) ? "h" : "f";
      if (on_axis) name += "*";
      name += std::to_string(j + 1);
      out += name + " = " + render(axis_factors[j]) + "\n";
    }
    return out;
  }

  if (product_size_estimate(fs) > kMaxSymbolicTerms)
    throw Error("integrand too large to expand symbolically");
  SigmaExpr g = expanded_product(fs);
  if (stage == DumpStage::Raw) return render(g) + "\n";
  return render(renormalize(g)) + "\n";
}

}  // namespace newtpot
