#include "siegel/io.hpp"

#include <fstream>
#include <sstream>

namespace siegel::io {

namespace {

template <typename Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ConfigError("complex number must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

template <typename Matrix>
json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix_from_json(const json& j, Eigen::Index n) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) throw ConfigError("matrix has the wrong row count");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw ConfigError("matrix has the wrong column count");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = row.at(k).get<Scalar>();
  }
  return m;
}

json complex_list(const std::vector<cplx>& v) {
  json out = json::array();
  for (cplx c : v) out.push_back(complex_to_json(c));
  return out;
}

std::vector<cplx> complex_list_from_json(const json& j) {
  std::vector<cplx> out;
  for (const auto& item : j) out.push_back(complex_from_json(item));
  return out;
}

json chain_fields(const TorusChainFamily& fam) {
  json j;
  j["tau"] = complex_list(fam.tau);
  json order = json::array();
  for (int o : fam.order) order.push_back(o + 1);
  j["order"] = order;
  json glue = json::array();
  for (const auto& [left, right] : fam.glue_points) {
    glue.push_back(complex_to_json(left));
    glue.push_back(complex_to_json(right));
  }
  j["glue_points"] = glue;
  j["t"] = complex_list(fam.t);
  if (fam.hyperelliptic) j["hyperelliptic"] = true;
  return j;
}

TorusChainFamily chain_from_json(const json& j, std::size_t junctions, const std::vector<cplx>& t) {
  TorusChainFamily fam;
  fam.tau = complex_list_from_json(j.at("tau"));
  const int g = fam.genus();
  if (j.contains("order")) {
    for (const auto& o : j.at("order")) fam.order.push_back(o.get<int>() - 1);
  } else {
    for (int i = 0; i < g; ++i) fam.order.push_back(i);
  }
  fam.hyperelliptic = j.value("hyperelliptic", false);
  const cplx default_point = fam.hyperelliptic ? kHyperellipticGluePoint : kDefaultGluePoint;
  std::vector<cplx> glue = j.contains("glue_points") ? complex_list_from_json(j.at("glue_points")) : std::vector<cplx>{};
  if (glue.empty()) {
    fam.glue_points.assign(junctions, {default_point, default_point});
  } else if (glue.size() == junctions) {
    for (cplx p : glue) fam.glue_points.emplace_back(p, p);
  } else if (glue.size() == 2 * junctions) {
    for (std::size_t k = 0; k < junctions; ++k) fam.glue_points.emplace_back(glue[2 * k], glue[2 * k + 1]);
  } else {
    throw ConfigError("glue_points must list one or two points per junction");
  }
  fam.t = t;
  return fam;
}

}  // namespace

json to_json(const SiegelPoint& z) {
  return {{"g", z.genus()}, {"re", matrix_to_json(z.real())}, {"im", matrix_to_json(z.imag())}};
}

SiegelPoint siegel_point_from_json(const json& j) {
  return guarded("SiegelPoint", [&] {
    const int g = j.at("g").get<int>();
    if (g < 1) throw ConfigError("SiegelPoint: g must be positive");
    return SiegelPoint::from_parts(matrix_from_json<double>(j.at("re"), g), matrix_from_json<double>(j.at("im"), g));
  });
}

json to_json(const SymplecticMatrix& m) { return {{"g", m.genus()}, {"entries", matrix_to_json(m.entries())}}; }

SymplecticMatrix symplectic_from_json(const json& j) {
  return guarded("SymplecticMatrix", [&] {
    const int g = j.at("g").get<int>();
    if (g < 1) throw ConfigError("SymplecticMatrix: g must be positive");
    try {
      return SymplecticMatrix::from_entries(matrix_from_json<std::int64_t>(j.at("entries"), 2 * g));
    } catch (const ConfigError&) {
      throw;
    } catch (const InputError& e) {
      throw ConfigError(std::string("SymplecticMatrix: ") + e.what());
    }
  });
}

json to_json(const ReductionResult& r) {
  return {{"gamma", to_json(r.gamma)},
          {"point", to_json(r.z_reduced)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"in_siegel_set", r.in_siegel_set}};
}

json to_json(const TorusChainFamily& fam) {
  json j = chain_fields(fam);
  j["kind"] = "chain";
  return j;
}

json to_json(const NonSeparatingFamily& fam) {
  json j = chain_fields(fam.base);
  std::vector<cplx> t = fam.base.t;
  t.push_back(fam.t);
  j["t"] = complex_list(t);
  j["kind"] = "nonseparating";
  j["a"] = complex_to_json(fam.a);
  j["b"] = complex_to_json(fam.b);
  j["c0"] = complex_to_json(fam.c0);
  j["c1"] = complex_to_json(fam.c1);
  j["handle_position"] = fam.handle_position + 1;
  if (fam.first_order) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < fam.first_order->rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < fam.first_order->cols(); ++k) row.push_back(complex_to_json((*fam.first_order)(i, k)));
      rows.push_back(row);
    }
    j["pi"] = rows;
  }
  return j;
}

Family family_from_json(const json& j) {
  return guarded("family", [&]() -> Family {
    const std::string kind = j.at("kind").get<std::string>();
    const std::size_t g = j.at("tau").size();
    std::vector<cplx> t = j.contains("t") ? complex_list_from_json(j.at("t")) : std::vector<cplx>{};
    if (kind == "chain") {
      if (g < 1 || t.size() != g - 1) throw ConfigError("chain family needs g-1 plumbing parameters");
      TorusChainFamily fam = chain_from_json(j, g - 1, t);
      fam.validate();
      return fam;
    }
    if (kind == "nonseparating") {
      if (g < 1 || t.size() != g) throw ConfigError("non-separating family needs g-1 base parameters plus the handle t");
      NonSeparatingFamily fam;
      const cplx handle_t = t.back();
      t.pop_back();
      fam.base = chain_from_json(j, g - 1, t);
      fam.t = handle_t;
      fam.a = complex_from_json(j.at("a"));
      fam.b = complex_from_json(j.at("b"));
      if (j.contains("c0")) fam.c0 = complex_from_json(j.at("c0"));
      if (j.contains("c1")) fam.c1 = complex_from_json(j.at("c1"));
      fam.handle_position = j.value("handle_position", 1) - 1;
      if (j.contains("pi")) {
        const auto n = static_cast<Eigen::Index>(g + 1);
        const json& rows = j.at("pi");
        if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) throw ConfigError("pi must be g x g");
        CMatrix pi(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
          if (static_cast<Eigen::Index>(rows.at(r).size()) != n) throw ConfigError("pi must be g x g");
          for (Eigen::Index c = 0; c < n; ++c) pi(r, c) = complex_from_json(rows.at(r).at(c));
        }
        fam.first_order = pi;
      }
      fam.validate();
      return fam;
    }
    throw ConfigError("family kind must be \"chain\" or \"nonseparating\"");
  });
}

json to_json(const BoundaryVerdict& v) {
  json j{{"kind", to_string(v.kind)},
         {"rank", v.rank},
         {"diagnostics",
          {{"tail_begin", v.diagnostics.tail_begin},
           {"leading_spread", v.diagnostics.leading_spread},
           {"full_spread", v.diagnostics.full_spread},
           {"min_schur_eigenvalue", v.diagnostics.min_schur_eigenvalue}}}};
  if (v.limit) j["limit"] = to_json(*v.limit);
  return j;
}

json to_json(const ReducibilityReport& r) {
  return {{"partition", r.partition},
          {"off_block_mass", r.off_block_mass},
          {"reducible", r.reducible},
          {"reduced", to_json(r.reduced)}};
}

json parse(const std::string& text) {
  return guarded("JSON", [&] { return json::parse(text); });
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace siegel::io
