#include "sspd/report.hpp"

#include <ostream>
#include <sstream>

#include "json.hpp"

namespace sspd {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename T>
ordered_json opt_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

ordered_json report_json(const RunReport& r) {
  ordered_json j;
  j["generator"] = r.generator;
  j["input_file"] = r.input_file;
  j["n"] = r.n;
  j["dim"] = r.dim;
  j["seed"] = r.seed;
  j["construction"] = r.construction;
  j["eps"] = r.eps;
  j["psi"] = opt_json(r.psi);
  j["rho"] = opt_json(r.rho);
  j["t"] = opt_json(r.t);
  j["pair_count"] = opt_json(r.pair_count);
  j["weight"] = opt_json(r.weight);
  j["max_pairs_per_point"] = opt_json(r.max_pairs_per_point);
  j["edges"] = opt_json(r.edges);
  j["max_degree"] = opt_json(r.max_degree);
  j["separator_size"] = opt_json(r.separator_size);
  j["side_a"] = opt_json(r.side_a);
  j["side_b"] = opt_json(r.side_b);
  j["stretch"] = opt_json(r.stretch);
  j["mean_gap_proxy"] = opt_json(r.mean_gap_proxy);
  j["total_weight"] = opt_json(r.total_weight);
  j["coverage_ok"] = opt_json(r.coverage_ok);
  j["separation_ok"] = opt_json(r.separation_ok);
  j["stretch_ok"] = opt_json(r.stretch_ok);
  j["separator_ok"] = opt_json(r.separator_ok);
  j["note"] = r.note;
  j["duration_ms"] = r.duration_ms;
  return j;
}

// CSV needs quoting only for the free-text fields; everything else is
// numeric or a known token.
std::string csv_escape(const std::string& s) {
  bool needs = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>) {
    return *v ? "1" : "0";
  } else {
    return ordered_json(*v).dump();
  }
}

}  // namespace

void write_jsonl(std::ostream& out, const std::vector<RunReport>& reports) {
  for (const RunReport& r : reports) out << report_json(r).dump() << '\n';
}

void write_csv(std::ostream& out, const std::vector<RunReport>& reports) {
  out << "generator,input_file,n,dim,seed,construction,eps,psi,rho,t,"
         "pair_count,weight,max_pairs_per_point,edges,max_degree,"
         "separator_size,side_a,side_b,stretch,mean_gap_proxy,total_weight,"
         "coverage_ok,separation_ok,stretch_ok,separator_ok,note,duration_ms\n";
  for (const RunReport& r : reports) {
    out << csv_escape(r.generator) << ',' << csv_escape(r.input_file) << ','
        << r.n << ',' << r.dim << ',' << r.seed << ','
        << csv_escape(r.construction) << ',' << ordered_json(r.eps).dump()
        << ',' << cell(r.psi) << ',' << cell(r.rho) << ',' << cell(r.t) << ','
        << cell(r.pair_count) << ',' << cell(r.weight) << ','
        << cell(r.max_pairs_per_point) << ',' << cell(r.edges) << ','
        << cell(r.max_degree) << ',' << cell(r.separator_size) << ','
        << cell(r.side_a) << ',' << cell(r.side_b) << ',' << cell(r.stretch)
        << ',' << cell(r.mean_gap_proxy) << ',' << cell(r.total_weight) << ','
        << cell(r.coverage_ok) << ',' << cell(r.separation_ok) << ','
        << cell(r.stretch_ok) << ',' << cell(r.separator_ok) << ','
        << csv_escape(r.note) << ',' << ordered_json(r.duration_ms).dump()
        << '\n';
  }
}

}  // namespace sspd
