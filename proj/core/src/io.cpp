#include "slicesemi/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace slicesemi {

json element_to_json(const Element& x) {
  return json{{"algebra", x.algebra().code()}, {"coeffs", x.coeffs()}};
}

Element element_from_json(const json& j) {
  if (!j.is_object() || !j.contains("algebra") || !j.contains("coeffs"))
    fail(Err::BadInput, "element JSON needs {algebra, coeffs}");
  const Algebra& alg = Algebra::from_code(j.at("algebra").get<std::string>());
  std::vector<double> c = j.at("coeffs").get<std::vector<double>>();
  return Element(alg, std::move(c));
}

json op_to_json(const OpMatrix& M) {
  json rows = json::array();
  for (int i = 0; i < M.m(); ++i) {
    json row = json::array();
    for (int k = 0; k < M.m(); ++k) row.push_back(M.at(i, k).coeffs());
    rows.push_back(std::move(row));
  }
  return json{{"algebra", M.algebra().code()}, {"m", M.m()}, {"entries", std::move(rows)}};
}

OpMatrix op_from_json(const json& j) {
  if (!j.is_object() || !j.contains("algebra") || !j.contains("m") || !j.contains("entries"))
    fail(Err::BadInput, "operator JSON needs {algebra, m, entries}");
  const Algebra& alg = Algebra::from_code(j.at("algebra").get<std::string>());
  const int m = j.at("m").get<int>();
  const json& rows = j.at("entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != m)
    fail(Err::BadInput, "entry rows do not match m");
  OpMatrix M(alg, m);
  for (int i = 0; i < m; ++i) {
    const json& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      fail(Err::BadInput, "entry row length does not match m");
    for (int k = 0; k < m; ++k)
      M.at(i, k) = Element(alg, row.at(k).get<std::vector<double>>());
  }
  return M;
}

json vec_to_json(const ModuleVec& x) {
  if (x.empty()) fail(Err::BadInput, "empty module vector");
  json entries = json::array();
  for (const Element& e : x) entries.push_back(e.coeffs());
  return json{{"algebra", x.front().algebra().code()},
              {"m", static_cast<int>(x.size())},
              {"entries", std::move(entries)}};
}

ModuleVec vec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("algebra") || !j.contains("entries"))
    fail(Err::BadInput, "vector JSON needs {algebra, entries}");
  const Algebra& alg = Algebra::from_code(j.at("algebra").get<std::string>());
  ModuleVec x;
  for (const auto& row : j.at("entries")) x.emplace_back(alg, row.get<std::vector<double>>());
  if (x.empty()) fail(Err::BadInput, "empty module vector");
  return x;
}

json certificate_to_json(const ContourCertificate& c) {
  return json{{"tail_bound", c.tail_bound}, {"quad_nodes", c.quad_nodes}, {"M", c.M},
              {"delta", c.delta},           {"r", c.r},                   {"eta", c.eta},
              {"truncation", c.truncation}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string spectrum_csv(const SphereSpectrum& s) {
  std::string out = "a,b,multiplicity\n";
  for (const Sphere& sp : s.spheres)
    out += format_double(sp.a) + "," + format_double(sp.b) + "," + std::to_string(sp.multiplicity) +
           "\n";
  return out;
}

std::string trace_csv(const SemigroupTrace& trace, const ModuleVec* x, bool full) {
  std::string out;
  if (trace.values.empty()) fail(Err::BadInput, "empty trace");
  const int d = trace.values.front().algebra().dim();
  const int m = trace.values.front().m();
  out = "t";
  int cols = full ? d * m * m : d * m;
  for (int c = 0; c < cols; ++c) out += ",c" + std::to_string(c);
  out += "\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    out += format_double(trace.times[k]);
    if (full) {
      const OpMatrix& T = trace.values[k];
      for (int i = 0; i < m; ++i)
        for (int kk = 0; kk < m; ++kk)
          for (int c = 0; c < d; ++c) out += "," + format_double(T.at(i, kk)[c]);
    } else {
      std::vector<double> v = realify_vec(apply(trace.values[k], *x));
      for (double vv : v) out += "," + format_double(vv);
    }
    out += "\n";
  }
  return out;
}

std::string matrix_csv(const RealMatrix& m) {
  std::string out;
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      if (j) out += ",";
      out += format_double(m.at(i, j));
    }
    out += "\n";
  }
  return out;
}

std::string algebra_table_csv(const Algebra& alg) {
  std::string out = "*";
  for (int k = 0; k < alg.dim(); ++k) out += "," + alg.basis_label(k);
  out += "\n";
  for (int i = 0; i < alg.dim(); ++i) {
    out += alg.basis_label(i);
    for (int k = 0; k < alg.dim(); ++k) {
      int idx = alg.basis_mul_index(i, k);
      int sgn = alg.basis_mul_sign(i, k);
      out += std::string(",") + (sgn >= 0 ? "+" : "-") + alg.basis_label(idx);
    }
    out += "\n";
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::BadInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::BadInput, "cannot write '" + path + "'");
  out << content;
}

json read_json_file(const std::string& path) {
  json j = json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded()) fail(Err::BadInput, "invalid JSON in '" + path + "'");
  return j;
}

}  // namespace slicesemi
