#include "entnf/io.hpp"

#include <cstdint>
#include <cstdio>

namespace entnf::io {

namespace {

Error parse_error(const std::string& what) { return Error("parse_error", what); }

Complex complex_from_json(const json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw parse_error("entries must be [re, im] pairs");
  return {e[0].get<double>(), e[1].get<double>()};
}

Dims dims_from_json(const json& j) {
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
    throw parse_error("missing or empty \"dims\"");
  Dims dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() <= 0)
      throw parse_error("dims must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  return dims;
}

Vector entries_from_json(const json& j, std::size_t expected) {
  if (!j.contains("entries") || !j["entries"].is_array())
    throw parse_error("missing \"entries\" array");
  const auto& e = j["entries"];
  if (e.size() != expected)
    throw DimensionError("entry count " + std::to_string(e.size()) +
                         " does not match expected " + std::to_string(expected));
  Vector v(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i)
    v[static_cast<Eigen::Index>(i)] = complex_from_json(e[i]);
  return v;
}

json entries_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v[i]));
  return a;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

MultiTensor parse_tensor(const json& j) {
  if (!j.is_object()) throw parse_error("tensor JSON must be an object");
  if (j.contains("kind") && j["kind"] != "tensor")
    throw parse_error("expected a pure tensor, got kind " + j["kind"].dump());
  Dims dims = dims_from_json(j);
  const std::size_t n = product(dims);
  return MultiTensor(std::move(dims), entries_from_json(j, n));
}

State parse_state(const json& j, const Tolerances& tol) {
  if (!j.is_object()) throw parse_error("state JSON must be an object");
  if (j.contains("kind") && j["kind"] == "density") {
    Dims dims = dims_from_json(j);
    const std::size_t n = product(dims);
    const Vector flat = entries_from_json(j, n * n);
    const auto ni = static_cast<Eigen::Index>(n);
    Matrix m(ni, ni);
    for (Eigen::Index r = 0; r < ni; ++r)
      for (Eigen::Index c = 0; c < ni; ++c) m(r, c) = flat[r * ni + c];
    return DensityOperator::checked(std::move(dims), std::move(m), tol);
  }
  return parse_tensor(j);
}

State parse_state_text(const std::string& text, const Tolerances& tol) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
  return parse_state(j, tol);
}

json to_json(const MultiTensor& psi) {
  return {{"dims", psi.dims()}, {"entries", entries_to_json(psi.data())}};
}

json to_json(const DensityOperator& rho) {
  const Matrix& m = rho.matrix();
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(complex_to_json(m(r, c)));
  return {{"kind", "density"}, {"dims", rho.dims()}, {"entries", a}};
}

json to_json(const State& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

json matrix_to_json(const Matrix& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(complex_to_json(m(r, c)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", a}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols"))
    throw parse_error("matrix JSON needs rows, cols and entries");
  const auto rows = j["rows"].get<Eigen::Index>();
  const auto cols = j["cols"].get<Eigen::Index>();
  const Vector flat = entries_from_json(j, static_cast<std::size_t>(rows * cols));
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = flat[r * cols + c];
  return m;
}

json to_json(const LocalOperatorSet& ops) {
  json list = json::array(), dets = json::array();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    list.push_back(matrix_to_json(ops[k]));
    const Complex d = ops.det_tags()[k];
    dets.push_back(std::isnan(d.real()) ? json(nullptr) : complex_to_json(d));
  }
  return {{"kind", to_string(ops.kind())}, {"ops", list}, {"det", dets}};
}

json to_json(const slocc::SloccConfig& cfg) {
  return {{"eps_id", cfg.eps_id},
          {"max_iters", cfg.max_iters},
          {"zero_threshold", cfg.zero_threshold},
          {"numerical_zero", cfg.numerical_zero},
          {"filter_norm_cap", cfg.filter_norm_cap},
          {"rank_tol", cfg.rank_tol},
          {"gauge", slocc::to_string(cfg.gauge)}};
}

json to_json(const slocc::NormalFormResult& r) {
  json j = {{"status", slocc::to_string(r.status)},
            {"reason", r.reason},
            {"iterations", r.iterations},
            {"input_trace", r.input_trace},
            {"trace", r.sigma.trace()},
            {"trace_history", r.trace_history},
            {"filters", to_json(r.filters)},
            {"filters_finite", r.filters_finite},
            {"hermitian_gauged", r.hermitian_gauged},
            {"sigma", to_json(r.sigma)}};
  if (r.state) j["state"] = to_json(*r.state);
  return j;
}

json to_json(const slocc::OptimalFilterReport& r) {
  json j = {{"normal_form", to_json(r.normal_form)},
            {"rescaled_filters", to_json(r.rescaled_filters)},
            {"success_probability", r.success_probability},
            {"rescaling_convention", r.rescaling_convention}};
  if (r.normalized_sigma) j["normalized_sigma"] = to_json(*r.normalized_sigma);
  if (r.normalized_state) j["normalized_state"] = to_json(*r.normalized_state);
  return j;
}

json to_json(const monotones::MonotoneSpec& spec) {
  json wirings = json::array();
  for (const auto& party : spec.wirings) {
    json groups = json::array();
    for (const auto& g : party) {
      json slots = json::array();
      for (auto s : g) slots.push_back(s + 1);
      groups.push_back(slots);
    }
    wirings.push_back(groups);
  }
  return {{"id", spec.id},
          {"degree", spec.degree},
          {"wirings", wirings},
          {"prefactor",
           {{"num", spec.prefactor.base.num},
            {"den", spec.prefactor.base.den},
            {"root", spec.prefactor.root}}},
          {"exponent", json::array({spec.exponent.num, spec.exponent.den})},
          {"source", spec.source}};
}

monotones::MonotoneSpec spec_from_json(const json& j) {
  monotones::MonotoneSpec s;
  try {
    s.id = j.value("id", std::string("custom"));
    s.degree = j.at("degree").get<std::size_t>();
    for (const auto& party : j.at("wirings")) {
      std::vector<std::vector<std::size_t>> groups;
      for (const auto& g : party) {
        std::vector<std::size_t> slots;
        for (const auto& slot : g) {
          const auto v = slot.get<long long>();
          if (v < 1) throw parse_error("wiring slots are numbered from 1");
          slots.push_back(static_cast<std::size_t>(v - 1));
        }
        groups.push_back(std::move(slots));
      }
      s.wirings.push_back(std::move(groups));
    }
    if (j.contains("prefactor")) {
      const auto& p = j["prefactor"];
      s.prefactor.base.num = p.value("num", 1L);
      s.prefactor.base.den = p.value("den", 1L);
      s.prefactor.root = p.value("root", 1);
    }
    if (j.contains("exponent")) {
      s.exponent.num = j["exponent"].at(0).get<long>();
      s.exponent.den = j["exponent"].at(1).get<long>();
    } else {
      s.exponent = {2, static_cast<long>(s.degree)};
    }
    s.source = j.value("source", std::string("user"));
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed monotone spec: ") + e.what());
  }
  s.validate();
  return s;
}

json to_json(const monotones::MonotoneValue& v) {
  return {{"id", v.spec_id},
          {"value", v.value},
          {"normalized_input", v.normalized_input},
          {"contraction", complex_to_json(v.contraction)},
          {"magnitude", v.magnitude},
          {"below_rounding_floor", v.below_rounding_floor}};
}

json to_json(const monotones::InvarianceReport& r) {
  return {{"trials", r.trials},
          {"unitary_only", r.unitary_only},
          {"max_relative_deviation", r.max_relative_deviation},
          {"threshold", r.threshold},
          {"passed", r.passed}};
}

json to_json(const monotones::MonotonicityReport& r) {
  return {{"trials", r.trials},
          {"max_excess", r.max_excess},
          {"slack", r.slack},
          {"passed", r.passed}};
}

json to_json(const lu::LuNormalFormResult& r) {
  json zeros = json::array(), pos = json::array(), levels = json::array();
  for (const auto& e : r.zero_pattern_report)
    zeros.push_back({{"index", e.index}, {"modulus", std::abs(e.value)}});
  for (const auto& e : r.positive_entries)
    pos.push_back({{"index", e.index}, {"value", complex_to_json(e.value)}});
  for (const auto& l : r.levels)
    levels.push_back({{"pivot", l.pivot}, {"pivot_history", l.pivot_history},
                      {"converged", l.converged}});
  return {{"status", lu::to_string(r.status)},
          {"psi_nf", to_json(r.psi_nf)},
          {"unitaries", to_json(r.unitaries)},
          {"zero_pattern", zeros},
          {"positive_entries", pos},
          {"max_zero_residual", r.max_zero_residual},
          {"levels", levels},
          {"restarts_used", r.restarts_used},
          {"fingerprint", to_json(lu::fingerprint(r.psi_nf))}};
}

json to_json(const lu::Fingerprint& fp) {
  json spectra = json::array(), mono = json::object();
  for (const auto& s : fp.spectra) spectra.push_back(std::vector<double>(s.data(), s.data() + s.size()));
  for (const auto& [id, v] : fp.monotones) mono[id] = v;
  return {{"unfolding_spectra", spectra}, {"monotones", mono}};
}

json to_json(const lu::EquivalenceReport& r) {
  return {{"verdict", lu::to_string(r.verdict)},
          {"fingerprint_distance", r.fingerprint_distance},
          {"best_match", std::isfinite(r.best_match) ? json(r.best_match) : json(nullptr)},
          {"restarts_used", r.restarts_used}};
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace entnf::io
