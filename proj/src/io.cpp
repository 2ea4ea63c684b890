#include "locclab/io.hpp"

#include <fstream>
#include <stdexcept>

namespace locclab {
namespace io {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(complex_to_json(m(i, j)));
  return out;
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("expected a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Vector vector_from_json(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

Matrix matrix_from_json(const json& j, int rows, int cols) {
  if (static_cast<int>(j.size()) != rows * cols)
    throw std::invalid_argument("matrix entry count does not match shape");
  Matrix m(rows, cols);
  size_t k = 0;
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[k++]);
  return m;
}

json instance_to_json(const BinaryInstance& inst) {
  json out;
  out["dims"] = inst.rho().dims().list();
  out["p_rho"] = inst.p_rho();
  out["rho"] = matrix_to_json(inst.rho().matrix());
  out["p_sigma"] = inst.p_sigma();
  out["sigma"] = matrix_to_json(inst.sigma().matrix());
  return out;
}

BinaryInstance instance_from_json(const json& j) {
  Dims dims(j.at("dims").get<std::vector<int>>());
  int d = dims.total();
  return BinaryInstance(j.at("p_rho").get<double>(),
                        HermOp(matrix_from_json(j.at("rho"), d, d), dims),
                        j.at("p_sigma").get<double>(),
                        HermOp(matrix_from_json(j.at("sigma"), d, d), dims));
}

asymptotic::TheoremOneWitness witness_from_json(const json& j, const Dims& dims) {
  asymptotic::TheoremOneWitness w;
  w.x = j.at("x").get<double>();
  if (j.contains("pi0")) {
    for (const json& jt : j.at("pi0").at("terms")) {
      asymptotic::SepTerm term;
      term.coeff = jt.at("coeff").get<double>();
      const json& jf = jt.at("factors");
      if (static_cast<int>(jf.size()) != dims.count())
        throw std::invalid_argument("pi0 term: one local ket required per subsystem");
      for (int k = 0; k < dims.count(); ++k) {
        Vector v = vector_from_json(jf[static_cast<size_t>(k)]);
        if (v.size() != dims[k])
          throw std::invalid_argument("pi0 term: local ket dimension mismatch");
        term.factors.push_back(std::move(v));
      }
      w.pi0.terms.push_back(std::move(term));
    }
  }
  for (const json& jp : j.at("pis")) {
    const json& jf = jp.at("factors");
    if (static_cast<int>(jf.size()) != dims.count())
      throw std::invalid_argument("product element: one factor required per subsystem");
    std::vector<Matrix> factors;
    for (int k = 0; k < dims.count(); ++k)
      factors.push_back(matrix_from_json(jf[static_cast<size_t>(k)], dims[k], dims[k]));
    w.pis.emplace_back(std::move(factors), dims);
  }
  return w;
}

std::pair<std::vector<Ket>, Dims> kets_from_json(const json& j) {
  Dims dims(j.at("dims").get<std::vector<int>>());
  std::vector<Ket> kets;
  for (const json& jv : j.at("vectors")) {
    Vector v = vector_from_json(jv);
    if (static_cast<int>(v.size()) != dims.total())
      throw std::invalid_argument("vector dimension does not match dims");
    kets.emplace_back(v.normalized(), dims);
  }
  return {kets, dims};
}

namespace {

const char* span_kind_name(asymptotic::SpanKind kind) {
  switch (kind) {
    case asymptotic::SpanKind::Finite: return "finite";
    case asymptotic::SpanKind::TensorProductSubspace: return "tensor-product-subspace";
    case asymptotic::SpanKind::Continuum: return "continuum";
  }
  return "unknown";
}

} // namespace

json certificate_to_json(const asymptotic::NoGoCertificate& cert) {
  json out;
  json stage_a;
  stage_a["product_states_in_supp_sigma"] = json::array();
  for (const Ket& k : cert.product_states_in_supp_sigma)
    stage_a["product_states_in_supp_sigma"].push_back(vector_to_json(k.amplitudes()));
  out["stage_a"] = stage_a;

  json stage_b = json::array();
  for (const auto& stage : cert.forced_form_checks) {
    json js;
    js["x"] = stage.x;
    js["restarts"] = stage.restarts;
    js["converged"] = stage.converged;
    js["classified"] = stage.classified;
    js["max_family_distance"] = stage.max_family_distance;
    js["records"] = json::array();
    for (const auto& rec : stage.records) {
      json jr;
      jr["factor_a"] = matrix_to_json(rec.factor_a);
      jr["factor_b"] = matrix_to_json(rec.factor_b);
      jr["residual_overlap"] = rec.residual_overlap;
      jr["residual_balance"] = rec.residual_balance;
      jr["family_distance"] = rec.family_distance;
      jr["family_index"] = rec.family_index;
      jr["in_family"] = rec.in_family;
      js["records"].push_back(std::move(jr));
    }
    stage_b.push_back(std::move(js));
  }
  out["stage_b"] = stage_b;

  json stage_c;
  if (cert.uncovered_vector)
    stage_c["uncovered_vector"] = vector_to_json(cert.uncovered_vector->amplitudes());
  stage_c["max_uncovered_overlap"] = cert.max_uncovered_overlap;
  out["stage_c"] = stage_c;

  out["conclusion"] = cert.conclusion;
  out["inconclusive"] = cert.inconclusive;
  out["note"] = cert.note;
  return out;
}

json witness_report_to_json(const asymptotic::WitnessReport& report) {
  json out;
  out["conditions"] = json::array();
  for (const auto& c : report.conditions) {
    json jc;
    jc["name"] = c.name;
    jc["residual"] = c.residual;
    jc["pass"] = c.pass;
    out["conditions"].push_back(std::move(jc));
  }
  out["pass"] = report.pass;
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

} // namespace io
} // namespace locclab
