#include "nilherm/ghclass.hpp"

#include <algorithm>
#include <cmath>

namespace nilherm {
namespace {

Complex top(const Multivector& a) { return a[kVolumeMask]; }

template <class... Rest>
Multivector wedge_all(const Multivector& first, const Rest&... rest) {
  Multivector out = first;
  ((out = wedge(out, rest)), ...);
  return out;
}

Eigen::VectorXd real_coordinates(const Multivector& a, int k) { return grade_coordinates(a, k).real(); }

std::vector<Multivector> orthonormal_image(const LieAlgebra& model) {
  Eigen::MatrixXd m(15, kDim);
  for (int i = 0; i < kDim; ++i) m.col(i) = real_coordinates(model.d_generator(i), 2);
  std::vector<Multivector> out;
  if (m.isZero(0.0)) return out;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  for (Eigen::Index c = 0; c < s.size(); ++c)
    if (s(c) > 1e-10 * s(0)) out.push_back(from_grade_coordinates(svd.matrixU().col(c).cast<Complex>(), 2));
  return out;
}

}  // namespace

Verdict verdict(double value, const Thresholds& t) {
  if (value < t.vanish) return Verdict::Vanishes;
  if (value > t.nonvanish) return Verdict::NonVanishing;
  return Verdict::Indeterminate;
}

char verdict_char(Verdict v) {
  switch (v) {
    case Verdict::Vanishes: return 'V';
    case Verdict::NonVanishing: return 'N';
    case Verdict::Indeterminate: return '?';
  }
  return '?';
}

std::string class_label(const std::array<bool, 4>& vanishing) {
  std::string present;
  for (int i = 0; i < 4; ++i)
    if (!vanishing[static_cast<std::size_t>(i)]) present += static_cast<char>('1' + i);
  if (present.empty()) return "Kähler";
  if (present == "1234") return "generic";
  if (present == "1") return "W1 (nearly Kähler)";
  if (present == "2") return "W2 (almost Kähler)";
  if (present == "3") return "W3 (cosymplectic Hermitian)";
  if (present == "4") return "W4 (locally conformal Kähler)";
  if (present == "123") return "W1⊕W2⊕W3 (semi-Kähler)";
  if (present == "34") return "W3⊕W4 (Hermitian)";
  std::string out;
  for (char c : present) {
    if (!out.empty()) out += "⊕";
    out += "W";
    out += c;
  }
  return out;
}

bool GHSignature::any_indeterminate() const {
  return std::any_of(verdicts.begin(), verdicts.end(), [](Verdict v) { return v == Verdict::Indeterminate; });
}

std::string GHSignature::pattern() const {
  std::string out;
  for (Verdict v : verdicts) out += verdict_char(v);
  return out;
}

std::optional<bool> GHSignature::in_class(std::string_view digits) const {
  bool unknown = false;
  for (int c = 1; c <= 4; ++c) {
    if (digits.find(static_cast<char>('0' + c)) != std::string_view::npos) continue;
    switch (verdicts[static_cast<std::size_t>(c - 1)]) {
      case Verdict::NonVanishing: return false;
      case Verdict::Indeterminate: unknown = true; break;
      case Verdict::Vanishes: break;
    }
  }
  if (unknown) return std::nullopt;
  return true;
}

nlohmann::json GHSignature::to_json() const {
  nlohmann::json j;
  j["w1"] = norms[0];
  j["w2"] = norms[1];
  j["w3"] = norms[2];
  j["w4"] = norms[3];
  nlohmann::json vanishing = nlohmann::json::array(), indeterminate = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    vanishing.push_back(verdicts[static_cast<std::size_t>(i)] == Verdict::Vanishes);
    if (verdicts[static_cast<std::size_t>(i)] == Verdict::Indeterminate) indeterminate.push_back("W" + std::to_string(i + 1));
  }
  j["vanishing"] = vanishing;
  j["label"] = label;
  j["indeterminate"] = indeterminate;
  return j;
}

GHSignature make_signature(const std::array<double, 4>& norms, const Thresholds& t) {
  GHSignature s;
  s.norms = norms;
  std::array<bool, 4> vanishing{};
  for (std::size_t i = 0; i < 4; ++i) {
    s.verdicts[i] = verdict(norms[i], t);
    vanishing[i] = norms[i] < t.vanish;
  }
  s.label = class_label(vanishing);
  return s;
}

double LemmaResiduals::magnitude(int lemma) const {
  double m = 0.0;
  switch (lemma) {
    case 1: return std::abs(lemma1);
    case 2: for (const auto& c : lemma2) m = std::max(m, std::abs(c)); return m;
    case 3: for (const auto& c : lemma3) m = std::max(m, std::abs(c)); return m;
    case 4: for (double x : lemma4) m = std::max(m, x); return m;
    default: throw InvalidInput("lemma index must be 1..4");
  }
}

std::array<Multivector, 6> effective_basis(const UnitaryCoframe& coframe) {
  const Multivector& a = coframe.alpha[0];
  const Multivector& b = coframe.alpha[1];
  const Multivector& c = coframe.alpha[2];
  const Multivector ab = conj(a), bb = conj(b), cb = conj(c);
  return {wedge_all(a, b, cb),
          wedge_all(b, c, ab),
          wedge_all(a, c, bb),
          wedge_all(a, b, bb) - wedge_all(a, c, cb),
          wedge_all(b, a, ab) - wedge_all(b, c, cb),
          wedge_all(c, a, ab) - wedge_all(c, b, bb)};
}

Classifier::Classifier(const LieAlgebra& algebra, Thresholds thresholds)
    : model_(algebra.orthonormal_model()), thresholds_(thresholds) {
  nilpotent_ = nilpotency_step(model_).has_value();
  image_basis_ = orthonormal_image(model_);
}

Multivector Classifier::domega(const AlmostComplexStructure& j) const { return model_.d(two_form(j.matrix())); }

DomegaDecomposition Classifier::decompose(const AlmostComplexStructure& j) const {
  DomegaDecomposition out;
  const Multivector omega = two_form(j.matrix());
  const TypeDecomposition types(unitary_coframe(j));
  out.domega = model_.d(omega);
  out.part30 = real_part(types.project(out.domega, 3, 0) + types.project(out.domega, 0, 3));
  out.part21 = real_part(types.project(out.domega, 2, 1) + types.project(out.domega, 1, 2));

  Eigen::Matrix<double, 20, 6> lefschetz;
  for (int i = 0; i < kDim; ++i) lefschetz.col(i) = real_coordinates(wedge(Multivector::generator(i), omega), 3);
  out.theta = lefschetz.colPivHouseholderQr().solve(real_coordinates(out.part21, 3));
  out.lee_part = wedge(one_form(out.theta), omega);
  out.effective = out.part21 - out.lee_part;
  return out;
}

std::array<double, 4> Classifier::norms(const AlmostComplexStructure& j) const {
  const DomegaDecomposition parts = decompose(j);
  const NijenhuisTensor n = nijenhuis(model_, j);
  const Multivector omega = two_form(j.matrix());
  return {norm(parts.part30), (n - n.alternation()).norm(), norm(parts.effective),
          norm(wedge(parts.domega, omega))};
}

GHSignature Classifier::classify(const AlmostComplexStructure& j) const {
  return make_signature(norms(j), thresholds_);
}

LemmaResiduals Classifier::lemma_residuals(const AlmostComplexStructure& j) const {
  const UnitaryCoframe coframe = unitary_coframe(j);
  const Multivector& a = coframe.alpha[0];
  const Multivector& b = coframe.alpha[1];
  const Multivector& c = coframe.alpha[2];
  const Multivector ab = conj(a), bb = conj(b), cb = conj(c);
  const Multivector da = model_.d(a), db = model_.d(b), dc = model_.d(c);

  const Multivector bcaab = wedge_all(b, c, a, ab);  // βγαᾱ
  const Multivector cabbb = wedge_all(c, a, b, bb);  // γαββ̄
  const Multivector abccb = wedge_all(a, b, c, cb);  // αβγγ̄

  LemmaResiduals r;
  const Complex t1 = top(wedge(da, bcaab)), t2 = top(wedge(db, cabbb)), t3 = top(wedge(dc, abccb));
  r.lemma1 = t1 + t2 + t3;
  r.lemma2 = {top(wedge(da, cabbb)), top(wedge(da, abccb)), top(wedge(db, abccb)),
              top(wedge(db, bcaab)), top(wedge(dc, bcaab)), top(wedge(dc, cabbb)),
              t1 - t2, t2 - t3};

  const Multivector omega = two_form(j.matrix());
  const Multivector dw = model_.d(omega);
  const auto eta = effective_basis(coframe);
  for (std::size_t i = 0; i < 6; ++i) r.lemma3[i] = top(wedge(dw, eta[i]));

  if (nilpotent_) {
    const Multivector ww = wedge(omega, omega);
    for (const Multivector* x : {&da, &db, &dc}) r.lemma4.push_back(max_abs(wedge(*x, ww)));
  } else {
    r.lemma4.push_back(norm(wedge(dw, omega)));
  }
  return r;
}

double Classifier::polar_residual(const AlmostComplexStructure& j) const {
  const Multivector omega = two_form(j.matrix());
  double m = 0.0;
  for (const auto& s : image_basis_) m = std::max(m, std::abs(inner(omega, s)));
  return m;
}

GHSignature classify(const LieAlgebra& algebra, const AlmostComplexStructure& j, Thresholds t) {
  return Classifier(algebra, t).classify(j);
}

AlmostComplexStructure cosymplectic_construct(const LieAlgebra& algebra) {
  const auto adapted = adapted_basis(algebra);
  if (!adapted) throw InvalidInput("algebra '" + algebra.name() + "' is not nilpotent");

  // Orthonormalize the adapted basis in the metric, keeping its flag.
  const Matrix6d framed = *adapted * algebra.gram().coframe().inverse();
  Matrix6d q;
  for (int r = 0; r < kDim; ++r) {
    Vector6d v = framed.row(r).transpose();
    for (int k = 0; k < r; ++k) v -= q.row(k).dot(v) * q.row(k).transpose();
    q.row(r) = v.normalized().transpose();
  }
  std::array<Multivector, 6> f;
  for (int r = 0; r < kDim; ++r) f[static_cast<std::size_t>(r)] = one_form(Vector6d(q.row(r).transpose()));

  const LieAlgebra model = algebra.orthonormal_model();
  const auto image = orthonormal_image(model);
  auto combine = [&](const Eigen::Vector3d& x) {
    return f[0] * Complex(x(0)) + f[1] * Complex(x(1)) + f[2] * Complex(x(2));
  };
  // Smallest right singular vector of the constraints g(lead ∧ x, σ) = 0
  // over x ∈ span(columns of `space`).
  auto null_direction = [&](const Multivector& lead, const Eigen::MatrixXd& space) -> Eigen::VectorXd {
    const Eigen::Index n = space.cols();
    if (image.empty()) return Eigen::VectorXd::Unit(n, 0);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(image.size()), n);
    for (std::size_t s = 0; s < image.size(); ++s)
      for (Eigen::Index c = 0; c < n; ++c)
        m(static_cast<Eigen::Index>(s), c) =
            inner(wedge(lead, combine(space.col(c))), image[s]).real();
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    return svd.matrixV().col(n - 1);
  };

  const Eigen::Vector3d x1 = null_direction(f[3], Eigen::Matrix3d::Identity()).normalized();
  const Eigen::JacobiSVD<Eigen::Matrix<double, 1, 3>> split(x1.transpose(), Eigen::ComputeFullV);
  const Eigen::Matrix<double, 3, 2> complement = split.matrixV().rightCols<2>();
  const Eigen::Vector3d x2 = (complement * null_direction(f[4], complement)).normalized();
  const Eigen::Vector3d x3 = x1.cross(x2);

  const Multivector base = wedge(f[3], combine(x1)) + wedge(f[4], combine(x2));
  Multivector omega = base + wedge(f[5], combine(x3));
  if (wedge(wedge(omega, omega), omega)[kVolumeMask].real() < 0.0) omega = base - wedge(f[5], combine(x3));
  return J_from_omega(real_part(omega));
}

}  // namespace nilherm
