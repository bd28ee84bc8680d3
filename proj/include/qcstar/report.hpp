#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace qcstar {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct CheckRow {
  std::string suite;
  std::string check;
  bool pass = true;
  double residual = 0.0;
  std::string witness;  // short description of a counterexample, if any
};

struct Report {
  std::vector<CheckRow> rows;

  void add(std::string suite, std::string check, bool pass, double residual,
           std::string witness = "") {
    rows.push_back({std::move(suite), std::move(check), pass, residual,
                    std::move(witness)});
  }
  void merge(const Report& other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  }
  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json o;
      o["suite"] = r.suite;
      o["check"] = r.check;
      o["verdict"] = r.pass ? "pass" : "fail";
      o["residual"] = fmt_double(r.residual);
      o["witness_ref"] = r.witness;
      arr.push_back(o);
    }
    return arr;
  }

  std::string to_csv() const {
    std::string out = "suite,check,verdict,residual,witness_ref\n";
    for (const auto& r : rows) {
      out += r.suite + "," + r.check + "," + (r.pass ? "pass" : "fail") + "," +
             fmt_double(r.residual) + "," + r.witness + "\n";
    }
    return out;
  }
};

// Verdict sheet for the (T1)-(T4) suite, plus the CQ* norm comparison.
struct AxiomReport {
  struct Entry {
    std::string axiom;
    bool pass = true;
    double max_residual = 0.0;
    std::string witness;
  };
  std::vector<Entry> entries;
  double op_norm_max_gap = 0.0;  // max relative gap |a|_op vs |a|_0 over samples
  bool cq_norm_equal = true;

  void add(std::string axiom, bool pass, double residual,
           std::string witness = "") {
    entries.push_back({std::move(axiom), pass, residual, std::move(witness)});
  }
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json o;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
      nlohmann::ordered_json row;
      row["axiom"] = e.axiom;
      row["verdict"] = e.pass ? "pass" : "fail";
      row["witness_ref"] = e.witness;
      row["max_residual"] = fmt_double(e.max_residual);
      arr.push_back(row);
    }
    o["axioms"] = arr;
    o["cq_norm_equal"] = cq_norm_equal;
    o["op_norm_max_gap"] = fmt_double(op_norm_max_gap);
    return o;
  }

  std::string to_csv() const {
    std::string out = "axiom,verdict,witness_ref,max_residual\n";
    for (const auto& e : entries)
      out += e.axiom + "," + (e.pass ? "pass" : "fail") + "," + e.witness +
             "," + fmt_double(e.max_residual) + "\n";
    return out;
  }

  Report as_report() const {
    Report r;
    for (const auto& e : entries)
      r.add("axioms", e.axiom, e.pass, e.max_residual, e.witness);
    return r;
  }
};

}  // namespace qcstar
