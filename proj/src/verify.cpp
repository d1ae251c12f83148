#include "bergman/verify.hpp"

#include "bergman/subspaces.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

namespace bergman {

namespace {

constexpr double kTiny = std::numeric_limits<double>::denorm_min();

/// A positive quantity as a residual; never rounds a true violation to 0.
double positive_part(double x) { return x > 0.0 ? std::max(x, kTiny) : 0.0; }
double positive_part(const Rational& x) { return x > 0 ? std::max(to_double(x), kTiny) : 0.0; }

template <BergmanScalar Scalar>
struct Problem {
  using Real = RealOf<Scalar>;

  const CheckSpec& spec;

  TruncatedSpace<Scalar> space(Index dim) const { return TruncatedSpace<Scalar>::monomial(spec.alpha, dim); }
  Subspace<Scalar> residue(Index dim) const { return residue_subspace(space(dim), spec.N, spec.residues); }
  Vec<Real> coeffs(Index count) const { return coeff_table<Real>(spec.N, spec.alpha, count, spec.perturbation); }
  Real bound() const { return lower_bound<Real>(spec.N, spec.alpha); }

  /// A random element of H (ambient coefficients) for sample i.
  Vec<Scalar> sample(const Subspace<Scalar>& H, int i) const {
    return H.project(random_coeffs<Scalar>(H.ambient().dim(), derive_seed(spec.seed, static_cast<std::uint64_t>(i))));
  }
};

/// The graded family of restrictions used by the operator identities.
///
/// Index i is the truncation level D + (i−1)N, so index 1 is the base level
/// D and index 0 sits one shift below it (needed for the wandering subspace at
/// the base). T[i] maps H[i] into H[i+1]; A[i] = T[i](T[i]*T[i])⁻¹ and
/// Astar[i] is its metric adjoint, H[i+1] → H[i].
template <BergmanScalar Scalar>
struct Ladder {
  std::vector<Subspace<Scalar>> H;
  std::vector<Restriction<Scalar>> T;
  std::vector<LinearMap<Scalar>> A;
  std::vector<LinearMap<Scalar>> Astar;

  Ladder(const Problem<Scalar>& p, int top) {
    const int N = p.spec.N;
    const Index base = p.spec.D - N;
    for (int i = 0; i <= top; ++i) H.push_back(p.residue(base + static_cast<Index>(i) * N));
    for (int i = 0; i < top; ++i) {
      const auto S = shift(H[i].ambient(), H[i + 1].ambient(), N);
      T.push_back(restrict(S, H[i], 0.0));
      A.push_back(build_A(T.back().map));
      Astar.push_back(adjoint(A.back()));
    }
  }

  LinearMap<Scalar> id(int i) const { return identity(H[i].coordinate_space()); }

  /// T^k : H[from] → H[from+k].
  LinearMap<Scalar> T_pow(int from, int k) const {
    LinearMap<Scalar> out = id(from);
    for (int j = 0; j < k; ++j) out = compose(T[from + j].map, out);
    return out;
  }

  /// A^k : H[from] → H[from+k].
  LinearMap<Scalar> A_pow(int from, int k) const {
    LinearMap<Scalar> out = id(from);
    for (int j = 0; j < k; ++j) out = compose(A[from + j], out);
    return out;
  }

  /// (A*)^k : H[to+k] → H[to].
  LinearMap<Scalar> Astar_pow(int to, int k) const {
    LinearMap<Scalar> out = id(to + k);
    for (int j = k - 1; j >= 0; --j) out = compose(Astar[to + j], out);
    return out;
  }

  /// E = H[i] ⊖ T H[i−1].
  Subspace<Scalar> E(int i) const { return wandering(H[i], T[i - 1]); }

  /// P_E in the coordinates of H[i], built from an orthogonal basis of E.
  LinearMap<Scalar> P_E(int i) const {
    const Subspace<Scalar> e = E(i);
    Mat<Scalar> m = product(H[i].coordinates_map(), product(e.projector(), H[i].basis()));
    return LinearMap<Scalar>(H[i].coordinate_space(), H[i].coordinate_space(), std::move(m));
  }
};

template <BergmanScalar Scalar>
double coordinate_norm_ratio(const TruncatedSpace<Scalar>& num_space, const Vec<Scalar>& num,
                             const TruncatedSpace<Scalar>& den_space, const Vec<Scalar>& den) {
  return std::sqrt(to_double(squared_norm(num_space, num)) / to_double(squared_norm(den_space, den)));
}

struct Finding {
  double residual = 0.0;
  std::string note;
};

// --- individual checks -----------------------------------------------------

template <BergmanScalar Scalar>
Finding coeff_ratio(const CheckSpec& spec) {
  const Problem<Scalar> p{spec};
  const auto w = detail::weight_values<RealOf<Scalar>>(spec.alpha, spec.D + spec.N);
  const auto c = p.coeffs(spec.D);
  double worst = 0.0;
  for (Index n = 0; n < spec.D; ++n) {
    const RealOf<Scalar> ratio = w(n + spec.N) / w(n);
    if constexpr (is_exact_v<Scalar>)
      worst = std::max(worst, positive_part(RealOf<Scalar>(abs(c(n) - ratio) / ratio)));
    else
      worst = std::max(worst, std::abs(c(n) - ratio) / ratio);
  }
  return {worst, ""};
}

template <BergmanScalar Scalar>
Finding coeff_bounds(const CheckSpec& spec) {
  const Problem<Scalar> p{spec};
  const auto c = p.coeffs(spec.D);
  const auto lb = p.bound();
  double worst = 0.0;
  for (Index n = 0; n < spec.D; ++n) {
    if (c(n) > lb && c(n) < 1) continue;
    const RealOf<Scalar> excess = std::max<RealOf<Scalar>>(lb - c(n), c(n) - 1);
    worst = std::max({worst, to_double(excess), kTiny});
  }
  return {worst, ""};
}

template <BergmanScalar Scalar>
Finding norm_identity(const CheckSpec& spec) {
  const Problem<Scalar> p{spec};
  const auto V = p.space(spec.D);
  const auto W = p.space(spec.D + spec.N);
  const auto S = shift(V, W, spec.N);
  const auto H = p.residue(spec.D);
  const auto c = p.coeffs(spec.D);
  double worst = 0.0;
  for (int i = 0; i < kSamplesPerCheck; ++i) {
    const Vec<Scalar> f = p.sample(H, i);
    const auto nf = squared_norm(V, f);
    if (is_zero(nf)) continue;
    const auto lhs = squared_norm(W, S(f));
    RealOf<Scalar> rhs(0);
    for (Index n = 0; n < spec.D; ++n) {
      if constexpr (is_exact_v<Scalar>)
        rhs += c(n) * V.weight(n) * f(n) * f(n);
      else
        rhs += c(n) * V.weight(n) * std::norm(f(n));
    }
    if constexpr (is_exact_v<Scalar>)
      worst = std::max(worst, positive_part(RealOf<Scalar>(abs(lhs - rhs) / nf)));
    else
      worst = std::max(worst, std::abs(lhs - rhs) / nf);
  }
  return {worst, ""};
}

template <BergmanScalar Scalar>
Finding lower_bound_check(const CheckSpec& spec) {
  const Problem<Scalar> p{spec};
  const auto V = p.space(spec.D);
  const auto S = shift(V, p.space(spec.D + spec.N), spec.N);
  const auto H = p.residue(spec.D);
  const auto T = restrict(S, H, 0.0);
  const auto lb = p.bound();
  double worst = 0.0;
  for (int i = 0; i < kSamplesPerCheck; ++i) {
    const Vec<Scalar> c = H.coordinates(p.sample(H, i));
    const auto nf = squared_norm(T.map.domain(), c);
    if (is_zero(nf)) continue;
    const auto image = squared_norm(T.map.codomain(), T.map(c));
    worst = std::max(worst, positive_part(RealOf<Scalar>((lb * nf - image) / nf)));
  }
  // σ_min(T) ≥ (3+α)^{−N/2}; exactly via the diagonal of T*T when possible.
  const Mat<Scalar> gram = compose(adjoint(T.map), T.map).matrix();
  if (is_exact_v<Scalar> && detail::is_diagonal(gram)) {
    for (Index i = 0; i < gram.rows(); ++i) {
      if constexpr (is_exact_v<Scalar>) worst = std::max(worst, positive_part(RealOf<Scalar>(lb - gram(i, i))));
    }
  } else {
    const double sigma = smallest_singular_value(T.map);
    worst = std::max(worst, positive_part(std::sqrt(to_double(lb)) - sigma));
  }
  return {worst, "closed range of T certified by the smallest singular value at this truncation"};
}

template <BergmanScalar Scalar>
Finding adjoint_formula(const CheckSpec& spec) {
  const Problem<Scalar> p{spec};
  const auto V = p.space(spec.D);
  const auto W = p.space(spec.D + spec.N);
  const auto explicit_adj = shift_adjoint_from(W, V, spec.N, p.coeffs(spec.D));
  const auto metric_adj = adjoint(shift(V, W, spec.N));
  const Mat<Scalar> diff = explicit_adj.matrix() - metric_adj.matrix();
  if (all_zero(diff)) return {0.0, ""};
  return {std::max(max_abs(diff), kTiny), ""};
}

template <BergmanScalar Scalar>
Finding astar_t(const CheckSpec& spec) {
  const Ladder<Scalar> L(Problem<Scalar>{spec}, 2);
  const auto& T = L.T[1].map;
  const double r1 = residual_norm(subtract(compose(L.Astar[1], T), L.id(1)));
  const double r2 = residual_norm(subtract(L.Astar[1], build_A_adjoint(T)));
  return {std::max(r1, r2), ""};
}

template <BergmanScalar Scalar>
Finding projection(const CheckSpec& spec) {
  const Ladder<Scalar> L(Problem<Scalar>{spec}, 2);
  const auto& T = L.T[1].map;
  const auto P = compose(T, L.Astar[1]);
  const auto I = L.id(2);
  double worst = residual_norm(subtract(compose(P, P), P));
  worst = std::max(worst, residual_norm(subtract(P, adjoint(P))));
  worst = std::max(worst, residual_norm(subtract(compose(P, T), T)));
  const Subspace<Scalar> E = L.E(2);
  const Mat<Scalar> e_coords = product(L.H[2].coordinates_map(), E.basis());
  for (Index j = 0; j < e_coords.cols(); ++j) {
    const Vec<Scalar> v = e_coords.col(j);
    const Vec<Scalar> pv = P(v);
    if (!all_zero(pv)) worst = std::max(worst, coordinate_norm_ratio(I.domain(), pv, I.domain(), v));
  }
  worst = std::max(worst, residual_norm(subtract(subtract(I, P), L.P_E(2))));
  return {worst, ""};
}

template <BergmanScalar Scalar>
Finding telescoping(const CheckSpec& spec) {
  const int n = spec.depth;
  if (n < 1) throw Error(ErrorCode::InvalidParams, "telescoping needs depth >= 1");
  const Ladder<Scalar> L(Problem<Scalar>{spec}, n + 1);
  const int top = n + 1;
  LinearMap<Scalar> sum(L.H[top].coordinate_space(), L.H[top].coordinate_space(),
                        Mat<Scalar>::Zero(L.H[top].dim(), L.H[top].dim()));
  for (int k = 0; k < n; ++k) {
    const int level = top - k;
    sum = add(sum, compose(L.T_pow(level, k), compose(L.P_E(level), L.Astar_pow(level, k))));
  }
  const auto rhs = subtract(L.id(top), compose(L.T_pow(1, n), L.Astar_pow(1, n)));
  return {residual_norm(subtract(sum, rhs)), ""};
}

template <BergmanScalar Scalar>
Finding kernel_containment(const CheckSpec& spec) {
  const int n = spec.depth;
  if (n < 1) throw Error(ErrorCode::InvalidParams, "kernel_containment needs depth >= 1");
  const Ladder<Scalar> L(Problem<Scalar>{spec}, n + 1);
  const int top = n + 1;
  const auto& ambient = L.H[top].ambient();
  const Subspace<Scalar> K = kernel(L.Astar_pow(1, n));
  const Mat<Scalar> kernel_vectors = product(L.H[top].basis(), K.basis());

  // E + TE + … + T^{n−1}E, with E taken at the base level and pushed up.
  const Subspace<Scalar> E = L.E(1);
  const Mat<Scalar> e_coords = product(L.H[1].coordinates_map(), E.basis());
  Mat<Scalar> span_vectors = Mat<Scalar>::Zero(ambient.dim(), E.dim() * n);
  for (int k = 0; k < n; ++k) {
    const Mat<Scalar> lifted = product(L.H[1 + k].basis(), product(L.T_pow(1, k).matrix(), e_coords));
    span_vectors.block(0, k * E.dim(), lifted.rows(), E.dim()) = lifted;
  }
  const Subspace<Scalar> target = Subspace<Scalar>::span(ambient, span_vectors);

  double worst = 0.0;
  for (Index j = 0; j < kernel_vectors.cols(); ++j) {
    const Vec<Scalar> v = kernel_vectors.col(j);
    const Vec<Scalar> miss = v - target.project(v);
    if (!all_zero(miss)) worst = std::max(worst, coordinate_norm_ratio(ambient, miss, ambient, v));
  }
  const Index expected = static_cast<Index>(n) * static_cast<Index>(spec.residues.size());
  std::string note;
  if (K.dim() != expected) {
    worst = std::max(worst, static_cast<double>(std::abs(K.dim() - expected)));
    note = "kernel dimension " + std::to_string(K.dim()) + ", expected " + std::to_string(expected);
  }
  return {worst, note};
}

template <BergmanScalar Scalar>
Finding expansive(const CheckSpec& spec) {
  const Problem<Scalar> p{spec};
  const Ladder<Scalar> L(p, spec.depth + 1);
  const auto c = p.coeffs(spec.D);
  const auto& V = L.H[1].ambient();
  double worst = 0.0;
  for (int m = 1; m <= spec.depth; ++m) {
    const auto Am = L.A_pow(1, m);
    for (int i = 0; i < kSamplesPerCheck; ++i) {
      const Vec<Scalar> g = p.sample(L.H[1], i);
      const auto ng = squared_norm(V, g);
      if (is_zero(ng)) continue;
      const Vec<Scalar> coords = L.H[1].coordinates(g);
      const auto image = squared_norm(Am.codomain(), Am(coords));
      worst = std::max(worst, positive_part(RealOf<Scalar>((ng - image) / ng)));
      if (m == 1) {
        // Per-coefficient form Σ (1/C_n) ω_n |b_n|² ≥ Σ ω_n |b_n|².
        RealOf<Scalar> weighted(0);
        for (Index k = 0; k < V.dim(); ++k) {
          if constexpr (is_exact_v<Scalar>)
            weighted += V.weight(k) * g(k) * g(k) / c(k);
          else
            weighted += V.weight(k) * std::norm(g(k)) / c(k);
        }
        worst = std::max(worst, positive_part(RealOf<Scalar>((ng - weighted) / ng)));
      }
    }
  }
  return {worst, ""};
}

template <BergmanScalar Scalar>
Finding min_degree(const CheckSpec& spec) {
  const Ladder<Scalar> L(Problem<Scalar>{spec}, spec.depth + 1);
  double worst = 0.0;
  for (int m = 1; m <= spec.depth; ++m) {
    const Mat<Scalar> columns = product(L.H[1 + m].basis(), L.A_pow(1, m).matrix());
    const Index low = static_cast<Index>(m) * spec.N;
    const Mat<Scalar> below = columns.topRows(low);
    if (!all_zero(below)) worst = std::max({worst, max_abs(below), kTiny});
  }
  return {worst, "intersection of the ranges of A^m certified by the minimal degree at this truncation"};
}

template <BergmanScalar Scalar>
Finding iterated(const CheckSpec& spec) {
  using Real = RealOf<Scalar>;
  const Problem<Scalar> p{spec};
  const Ladder<Scalar> L(p, spec.depth + 1);
  const Index D = spec.D;
  const int N = spec.N;
  const auto c = p.coeffs(D + static_cast<Index>(spec.depth) * N);
  const auto w = detail::weight_values<Real>(spec.alpha, D + static_cast<Index>(spec.depth) * N);
  const auto& tag = *L.H[1].tag();
  double worst = 0.0;
  for (int m = 1; m <= spec.depth; ++m) {
    const Mat<Scalar> action = product(L.H[1 + m].basis(), product(L.A_pow(1, m).matrix(), L.H[1].coordinates_map()));
    Mat<Scalar> expected = Mat<Scalar>::Zero(action.rows(), action.cols());
    for (Index n = 0; n < D; ++n) {
      if (!tag.contains_degree(n)) continue;
      Real product(1);
      for (int j = 0; j < m; ++j) product /= c(n + static_cast<Index>(j) * N);
      expected(n + static_cast<Index>(m) * N, n) = Scalar(product);
      // The closed form ω_n/ω_{n+mN} must agree with the product.
      const Real closed = w(n) / w(n + static_cast<Index>(m) * N);
      if constexpr (is_exact_v<Scalar>)
        worst = std::max(worst, positive_part(Real(abs(closed - product) / closed)));
      else
        worst = std::max(worst, std::abs(closed - product) / closed);
    }
    for (Index j = 0; j < action.cols(); ++j)
      for (Index i = 0; i < action.rows(); ++i) {
        const Scalar diff = action(i, j) - expected(i, j);
        if (is_zero(diff)) continue;
        const double scale = std::max(1.0, magnitude(expected(i, j)));
        worst = std::max({worst, magnitude(diff) / scale, kTiny});
      }
  }
  return {worst, ""};
}

template <BergmanScalar Scalar>
Finding reducing(const CheckSpec& spec) {
  const Problem<Scalar> p{spec};
  const auto S = shift(p.space(spec.D), p.space(spec.D + spec.N), spec.N);
  return {is_reducing(S, p.residue(spec.D), 0.0).residual(), ""};
}

template <BergmanScalar Scalar>
Finding beurling(const CheckSpec& spec) {
  const Problem<Scalar> p{spec};
  const int N = spec.N;
  const auto V = p.space(spec.D);
  const auto H = p.residue(spec.D);
  const auto S = shift(V, p.space(spec.D + N), N);
  const auto hypothesis = is_reducing(S, H, kRankTol);
  if (!hypothesis.reducing) throw Error(ErrorCode::NotReducing, "H is not reducing for S");

  const Subspace<Scalar> below = extend(H, spec.D - N);
  const auto T_into = restrict(shift(below.ambient(), V, N), below, 0.0);
  const Subspace<Scalar> E = wandering(H, T_into);
  const auto T = restrict(S, H, 0.0);
  const int depth = spec.depth > 0 ? spec.depth : max_closure_depth(E, N);
  const Subspace<Scalar> closure = invariant_closure(E, T, H, depth);

  const Index top = E.max_degree();
  const Index safe = top < 0 ? 0 : std::min(spec.D, top + static_cast<Index>(depth) * N + 1);
  double residual = subspace_distance(closure, lower_part(H, safe));
  std::string note = "closure compared with H on degrees < " + std::to_string(safe);
  const auto expected_dim = static_cast<Index>(spec.residues.size());
  if (E.dim() != expected_dim) {
    residual = std::max(residual, static_cast<double>(std::abs(E.dim() - expected_dim)));
    note += "; wandering dimension " + std::to_string(E.dim()) + ", expected " + std::to_string(expected_dim);
  }
  return {residual, note};
}

template <typename Fn>
ReportEntry run_timed(const CheckSpec& spec, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  Finding f = spec.mode == ScalarMode::Float64 ? fn(std::type_identity<Complex>{}) : fn(std::type_identity<Rational>{});
  const auto stop = std::chrono::steady_clock::now();
  ReportEntry e;
  e.spec = spec;
  e.residual = f.residual;
  e.pass = spec.mode == ScalarMode::ExactRational ? f.residual == 0.0 : f.residual <= spec.tol;
  e.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  e.note = std::move(f.note);
  if (spec.perturbation) {
    if (!e.note.empty()) e.note += "; ";
    e.note += "sabotaged: C[" + std::to_string(spec.perturbation->n) + "] perturbed";
  }
  return e;
}

void require_valid(const CheckSpec& spec) {
  WeightParams{spec.alpha, spec.N, spec.D}.validate();
  if (!(spec.tol >= 0.0)) throw Error(ErrorCode::InvalidParams, "tolerance must be nonnegative");
  if (spec.mode == ScalarMode::ExactRational && !spec.alpha.exact())
    throw Error(ErrorCode::ModeMismatch, "exact mode needs a rational alpha");
}

}  // namespace

#define BERGMAN_DEFINE_CHECK(api, impl)                                                 \
  ReportEntry api(const CheckSpec& spec) {                                              \
    require_valid(spec);                                                                \
    return run_timed(spec, [&]<typename S>(std::type_identity<S>) { return impl<S>(spec); }); \
  }

BERGMAN_DEFINE_CHECK(check_coeff_ratio, coeff_ratio)
BERGMAN_DEFINE_CHECK(check_coeff_bounds, coeff_bounds)
BERGMAN_DEFINE_CHECK(check_norm_identity, norm_identity)
BERGMAN_DEFINE_CHECK(check_lower_bound, lower_bound_check)
BERGMAN_DEFINE_CHECK(check_adjoint_formula, adjoint_formula)
BERGMAN_DEFINE_CHECK(check_astar_t, astar_t)
BERGMAN_DEFINE_CHECK(check_projection, projection)
BERGMAN_DEFINE_CHECK(check_telescoping, telescoping)
BERGMAN_DEFINE_CHECK(check_kernel_containment, kernel_containment)
BERGMAN_DEFINE_CHECK(check_expansive, expansive)
BERGMAN_DEFINE_CHECK(check_min_degree, min_degree)
BERGMAN_DEFINE_CHECK(check_iterated_coeff, iterated)
BERGMAN_DEFINE_CHECK(check_reducing, reducing)
BERGMAN_DEFINE_CHECK(check_beurling, beurling)

#undef BERGMAN_DEFINE_CHECK

namespace {

struct CheckInfo {
  CheckKind kind;
  const char* name;
  double tol;
  ReportEntry (*run)(const CheckSpec&);
};

const std::vector<CheckInfo>& registry() {
  static const std::vector<CheckInfo> table = {
      {CheckKind::CoeffRatio, "coeff_ratio", 1e-12, check_coeff_ratio},
      {CheckKind::CoeffBounds, "coeff_bounds", 0.0, check_coeff_bounds},
      {CheckKind::NormIdentity, "norm_identity", 1e-12, check_norm_identity},
      {CheckKind::LowerBound, "lower_bound", 1e-12, check_lower_bound},
      {CheckKind::AdjointFormula, "adjoint_formula", 1e-12, check_adjoint_formula},
      {CheckKind::AStarT, "astar_t", 1e-10, check_astar_t},
      {CheckKind::Projection, "projection", 1e-10, check_projection},
      {CheckKind::Telescoping, "telescoping", 1e-10, check_telescoping},
      {CheckKind::KernelContainment, "kernel_containment", 1e-9, check_kernel_containment},
      {CheckKind::Expansive, "expansive", 1e-12, check_expansive},
      {CheckKind::MinDegree, "min_degree", 1e-13, check_min_degree},
      {CheckKind::IteratedCoeff, "iterated_coeff", 1e-12, check_iterated_coeff},
      {CheckKind::Reducing, "reducing", 0.0, check_reducing},
      {CheckKind::Beurling, "beurling", 1e-10, check_beurling},
  };
  return table;
}

const CheckInfo& info(CheckKind kind) {
  for (const auto& c : registry())
    if (c.kind == kind) return c;
  throw Error(ErrorCode::InvalidParams, "unknown check kind");
}

}  // namespace

const char* check_name(CheckKind kind) { return info(kind).name; }

std::optional<CheckKind> parse_check(const std::string& name) {
  for (const auto& c : registry())
    if (name == c.name) return c.kind;
  return std::nullopt;
}

const std::vector<CheckKind>& all_checks() {
  static const std::vector<CheckKind> kinds = [] {
    std::vector<CheckKind> out;
    for (const auto& c : registry()) out.push_back(c.kind);
    return out;
  }();
  return kinds;
}

double default_tol(CheckKind kind) { return info(kind).tol; }

bool CheckSpec::operator<(const CheckSpec& other) const {
  const std::string a = name(), b = other.name();
  if (a != b) return a < b;
  if (N != other.N) return N < other.N;
  if (!(alpha == other.alpha)) return alpha < other.alpha;
  return std::tie(D, residues, depth, seed, mode) < std::tie(other.D, other.residues, other.depth, other.seed, other.mode);
}

CheckSpec make_check(CheckKind kind, int N, const Alpha& alpha, Index D, std::vector<int> residues, int depth,
                     std::uint64_t seed, ScalarMode mode) {
  CheckSpec s;
  s.kind = kind;
  s.N = N;
  s.alpha = alpha;
  s.D = D;
  s.residues = std::move(residues);
  s.depth = depth;
  s.seed = seed;
  s.mode = mode;
  s.tol = default_tol(kind);
  return s;
}

std::size_t VerificationReport::passed() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.pass; }));
}

ReportEntry run_check(const CheckSpec& spec) { return info(spec.kind).run(spec); }

VerificationReport run_suite(const std::vector<CheckSpec>& grid, unsigned threads) {
  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grid[a] < grid[b]; });

  VerificationReport report;
  report.entries.resize(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < order.size(); i = next++) {
      const CheckSpec& spec = grid[order[i]];
      try {
        report.entries[i] = run_check(spec);
      } catch (const std::exception& ex) {
        ReportEntry e;
        e.spec = spec;
        e.residual = std::numeric_limits<double>::infinity();
        e.pass = false;
        e.note = ex.what();
        report.entries[i] = std::move(e);
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, grid.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return report;
}

std::vector<std::vector<int>> nonempty_residue_sets(int N) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << N); ++mask) {
    std::vector<int> set;
    for (int k = 0; k < N; ++k)
      if (mask & (1u << k)) set.push_back(k);
    out.push_back(std::move(set));
  }
  return out;
}

namespace {

void append_grid(std::vector<CheckSpec>& out, const std::vector<int>& Ns, const std::vector<Alpha>& alphas,
                 const std::vector<Index>& dims, int max_depth, ScalarMode mode) {
  for (int N : Ns)
    for (const Alpha& alpha : alphas)
      for (Index D : dims) {
        std::vector<int> all(static_cast<std::size_t>(N));
        for (int k = 0; k < N; ++k) all[static_cast<std::size_t>(k)] = k;
        for (CheckKind kind : {CheckKind::CoeffRatio, CheckKind::CoeffBounds, CheckKind::AdjointFormula})
          out.push_back(make_check(kind, N, alpha, D, all, 0, 1, mode));
        for (const auto& residues : nonempty_residue_sets(N)) {
          for (CheckKind kind : {CheckKind::NormIdentity, CheckKind::LowerBound, CheckKind::AStarT,
                                 CheckKind::Projection, CheckKind::Reducing})
            out.push_back(make_check(kind, N, alpha, D, residues, 0, 1, mode));
          out.push_back(make_check(CheckKind::Beurling, N, alpha, D, residues, 0, 1, mode));
          for (int depth = 1; depth <= max_depth; ++depth)
            for (CheckKind kind : {CheckKind::Telescoping, CheckKind::KernelContainment})
              out.push_back(make_check(kind, N, alpha, D, residues, depth, 1, mode));
          for (CheckKind kind : {CheckKind::Expansive, CheckKind::MinDegree, CheckKind::IteratedCoeff})
            out.push_back(make_check(kind, N, alpha, D, residues, max_depth, 1, mode));
        }
      }
}

}  // namespace

std::vector<CheckSpec> default_grid() {
  std::vector<CheckSpec> out;
  std::vector<Alpha> floats;
  for (const char* a : {"-0.5", "0", "0.5", "1", "2.5"}) floats.push_back(Alpha::parse(a));
  append_grid(out, {1, 2, 3}, floats, {32, 64}, 4, ScalarMode::Float64);
  append_grid(out, {1, 2, 3}, {Alpha::rational(0, 1), Alpha::rational(1, 2), Alpha::rational(1, 1)}, {32, 64}, 4,
              ScalarMode::ExactRational);
  return out;
}

std::vector<CheckSpec> quick_grid() {
  std::vector<CheckSpec> out;
  append_grid(out, {1, 2}, {Alpha::parse("0"), Alpha::parse("0.5")}, {16}, 2, ScalarMode::Float64);
  append_grid(out, {1, 2}, {Alpha::rational(1, 2)}, {16}, 2, ScalarMode::ExactRational);
  return out;
}

}  // namespace bergman
