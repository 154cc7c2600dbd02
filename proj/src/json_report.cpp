#include "eqfree/json_report.hpp"

#include "eqfree/text.hpp"

namespace eqfree {

namespace {

Json word_list(const std::vector<Word>& words) {
  Json out = Json::array();
  for (const Word& w : words) out.push_back(print_word(w));
  return out;
}

const char* status_name(SDStatus s) {
  switch (s) {
    case SDStatus::stabilized: return "stabilized";
    case SDStatus::cap_reached: return "cap-reached";
    case SDStatus::unsupported: return "unsupported";
  }
  return "?";
}

}  // namespace

Json to_json(const EqualiserReport& report) {
  Json j;
  j["schema"] = "eqfree/1";
  j["kind"] = "equaliser";
  j["verdict"] = verdict_name(report.verdict);
  j["basisWords"] = word_list(report.basis);
  j["witnesses"] = word_list(report.witnesses);
  j["provenance"] = report.provenance;
  if (report.radius)
    j["radius"] = *report.radius;
  else
    j["radius"] = nullptr;
  return j;
}

Json to_json(const SDTrace& trace) {
  Json j;
  j["schema"] = "eqfree/1";
  j["kind"] = "sd-trace";
  j["status"] = status_name(trace.status);
  Json ranks = Json::array();
  for (std::size_t r : trace.ranks()) ranks.push_back(r);
  j["iterateRanks"] = ranks;
  if (trace.stabilized_index)
    j["stabilizedIndex"] = *trace.stabilized_index;
  else
    j["stabilizedIndex"] = nullptr;
  if (trace.sd)
    j["sdBasis"] = word_list(trace.sd->basis().words);
  else
    j["sdBasis"] = nullptr;
  j["note"] = trace.note;
  return j;
}

Json to_json(const CampaignReport& report) {
  Json j;
  j["schema"] = "eqfree/1";
  j["kind"] = "campaign";
  j["property"] = report.property;
  j["seed"] = report.seed;
  j["trials"] = report.trials;
  Json failures = Json::array();
  for (const std::string& f : report.failures) failures.push_back(f);
  j["failures"] = failures;
  j["status"] = report.passed() ? "pass" : "fail";
  return j;
}

Json fold_json(const SubgroupGraph& graph) {
  Json j;
  j["schema"] = "eqfree/1";
  j["kind"] = "fold";
  j["rank"] = graph.rank();
  j["vertices"] = graph.vertex_count();
  j["edges"] = graph.edge_count();
  j["basisWords"] = word_list(graph.basis().words);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace eqfree
