#include "kbp/report_json.hpp"

namespace kbp {

namespace {

nlohmann::json edge_json(Edge e) { return nlohmann::json::array({e.u, e.v}); }

nlohmann::json pattern_json(const Pattern& p) { return {{"r", p.r}, {"s", p.s}}; }

nlohmann::json violations_json(const std::vector<Violation>& violations) {
  nlohmann::json out = nlohmann::json::array();
  for (const Violation& v : violations) out.push_back({{"check", v.check}, {"detail", v.detail}});
  return out;
}

}  // namespace

nlohmann::json to_json(const RunReport& report) {
  nlohmann::json edges = nlohmann::json::array();
  for (const LemmaReport& e : report.edges)
    edges.push_back({{"edge", edge_json(e.target)},
                     {"status", to_string(e.status)},
                     {"red_edges", e.red_edge_count},
                     {"violations", violations_json(e.violations)}});
  nlohmann::json sandwich = {{"status", to_string(report.sandwich.status)},
                             {"level", report.sandwich.level},
                             {"max_witness_size", report.sandwich.max_size}};
  if (report.sandwich.witness) {
    sandwich["witness_edge"] = edge_json(*report.sandwich.witness);
    sandwich["witness_size"] = report.sandwich.witness_size;
  }
  return {{"seed", report.seed},
          {"pattern", pattern_json(report.pattern)},
          {"n", report.n},
          {"percolated", report.percolated},
          {"infected", report.infected},
          {"violation_count", report.violation_count()},
          {"record_violations", violations_json(report.record_violations)},
          {"size_sandwich", sandwich},
          {"edges", edges}};
}

nlohmann::json to_json(const OverlapReport& report) {
  return {{"pattern", pattern_json(report.pattern)},
          {"inequality", report.inequality},
          {"passed", report.passed},
          {"instances", report.instances},
          {"worst", {{"P", report.worst.p}, {"Q", report.worst.q}, {"slack", report.worst_slack.to_string()}}}};
}

nlohmann::json to_json(const Case3Report& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const Case3Row& row : report.rows)
    rows.push_back({{"m", row.m},
                    {"instances", row.instances},
                    {"max_product_sum", row.max_product_sum},
                    {"product_ceiling", row.product_ceiling},
                    {"right_side", row.right_side.to_string()},
                    {"within_ceiling", row.within_ceiling},
                    {"inequality_holds", row.inequality_holds},
                    {"right_side_exceeds_ceiling", row.right_side_exceeds_ceiling}});
  return {{"pattern", pattern_json(report.pattern)}, {"passed", report.passed}, {"rows", rows}};
}

}  // namespace kbp
