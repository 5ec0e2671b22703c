#include <cmath>

#include "ontogdss/codec.hpp"
#include "ontogdss/engine.hpp"

namespace ontogdss {

namespace {

json cmd(const std::string& verb, json payload) { return json{{"verb", verb}, {"payload", std::move(payload)}}; }

json member(const std::string& id, const std::string& name, const std::string& field, double age,
            const std::string& education, const std::string& nationality) {
  return json{{"id", id},
              {"name", name},
              {"attributes",
               {{"field", field}, {"age", age}, {"education", education}, {"nationality", nationality}}}};
}

json criterion(const std::string& name, const std::string& direction, double weight, json preference,
               double scale) {
  return json{{"name", name},
              {"direction", direction},
              {"weight", weight},
              {"preference", std::move(preference)},
              {"discordance_scale", scale}};
}

// Evaluator-specific scores: the shared base table nudged by a fixed pattern
// so individual rankings differ without being random.
std::vector<std::vector<double>> scores_for(const std::vector<std::vector<double>>& base, std::size_t evaluator) {
  auto out = base;
  for (std::size_t s = 0; s < out.size(); ++s) {
    for (std::size_t c = 0; c < out[s].size(); ++c) {
      auto step = static_cast<double>((evaluator * 7 + s * 3 + c) % 5) - 2.0;
      out[s][c] = base[s][c] + 0.5 * step;
    }
  }
  return out;
}

}  // namespace

json demo_document() {
  const std::vector<std::string> alternatives = {"Y1", "Y2", "Y3", "Y4"};

  json pool{{"groups",
             json::array({
                 {{"id", "G1"},
                  {"members", json::array({member("H1", "Director of engineering", "computing", 52, "phd", "HK"),
                                           member("H2", "Finance controller", "economic", 47, "master", "UK")})}},
                 {{"id", "G2"},
                  {"members", json::array({member("P1", "Senior developer", "computing", 38, "master", "HK"),
                                           member("P2", "Project manager", "management", 41, "bachelor", "CN"),
                                           member("P3", "Legal counsel", "law", 45, "master", "HK")})}},
                 {{"id", "G3"},
                  {"members", json::array({member("L1", "Junior developer", "computing", 26, "bachelor", "CN"),
                                           member("L2", "Business analyst", "economic", 31, "master", "SG")})}},
                 {{"id", "G4"},
                  {"members", json::array({member("I1", "External auditor", "economic", 50, "phd", "AU"),
                                           member("I2", "Client representative", "management", 44, "master", "US")})}},
                 {{"id", "G5"},
                  {"members", json::array({member("Y1", "Staff member Y1", "computing", 33, "master", "HK"),
                                           member("Y2", "Staff member Y2", "computing", 29, "bachelor", "CN"),
                                           member("Y3", "Staff member Y3", "management", 36, "master", "HK"),
                                           member("Y4", "Staff member Y4", "economic", 40, "phd", "UK")})}},
             })}};

  // First selection by professional field, second by personal characteristics.
  json stage1{{"threshold", 1.0},
              {"criteria", json::array({{{"attribute", "field"},
                                         {"admissible", json::array({"computing", "economic", "management"})},
                                         {"weight", 1.0}}})}};
  json stage2{{"threshold", 0.0},
              {"criteria", json::array({{{"attribute", "education"}, {"admissible", json::array({"master", "phd"})},
                                         {"weight", 2.0}},
                                        {{"attribute", "age"}, {"min", 30.0}, {"max", 50.0}, {"weight", 1.0}}})}};

  json outline{{"id", "evaluation"},
               {"label", "Work performance of four staff members"},
               {"children", json::array({{{"id", "technical"}, {"label", "Technical contribution"}},
                                         {{"id", "collaboration"}, {"label", "Collaboration and leadership"}}})}};

  const std::vector<std::vector<double>> technical_base = {
      {6.0, 7.0, 3.0}, {9.0, 8.0, 2.0}, {5.0, 6.0, 4.0}, {8.0, 9.0, 1.0}};
  json technical_matrix{{"schemes", alternatives},
                        {"criteria", json::array({criterion("delivered output", "Maximize", 0.5,
                                                            {{"shape", "Linear"}, {"q", 0.5}, {"p", 3.0}}, 10.0),
                                                  criterion("code quality", "Maximize", 0.3, {{"shape", "Usual"}}, 10.0),
                                                  criterion("open defects", "Minimize", 0.2, {{"shape", "Usual"}}, 5.0)})},
                        {"scores", technical_base}};

  const std::vector<std::vector<double>> collaboration_base = {
      {9.0, 8.0, 7.0}, {6.0, 5.0, 7.0}, {8.0, 9.0, 8.0}, {7.0, 6.0, 6.0}};
  json collaboration_matrix{{"schemes", alternatives},
                            {"criteria", json::array({criterion("teamwork", "Maximize", 0.4, {{"shape", "Usual"}}, 10.0),
                                                      criterion("leadership", "Maximize", 0.35, {{"shape", "Usual"}}, 10.0),
                                                      criterion("communication", "Maximize", 0.25,
                                                                {{"shape", "Linear"}, {"q", 0.0}, {"p", 2.0}}, 10.0)})},
                            {"scores", collaboration_base}};

  json script = json::array();
  auto annotate = [&](const std::string& kind, const std::string& label, bool quantitative) {
    script.push_back(cmd("annotate", {{"kind", kind}, {"label", label}, {"quantitative", quantitative}}));
  };
  annotate("ProblemType", "personnel performance evaluation", false);
  annotate("DecisionLimitation", "review completed within one quarter", false);
  annotate("DecisionPrinciple", "evaluators drawn from every organisational level", false);
  annotate("DecisionTarget", "rank the four staff members", false);
  annotate("ProblemCharacteristic", "multi-source assessment", false);
  annotate("EvaluationCriterion", "technical contribution", true);
  annotate("EvaluationCriterion", "collaboration and leadership", true);
  script.push_back(cmd("classify", json::object()));
  script.push_back(cmd("advance", {{"stage", "PropertiesAnalysis"}}));
  script.push_back(cmd("decompose", {{"outline", outline}}));
  script.push_back(cmd("select-panel", {{"pool", pool},
                                        {"alternatives", alternatives},
                                        {"stage1", stage1},
                                        {"stage2", stage2},
                                        {"k", 1}}));
  script.push_back(cmd("appoint", json::object()));
  script.push_back(cmd("advance", {{"stage", "SchemeEstablishment"}}));

  auto element = [&](const std::string& node, const std::string& id, const std::string& author,
                     const std::string& kind, const std::string& text, const std::string& scheme) {
    json e{{"id", id}, {"author", author}, {"kind", kind}, {"text", text}};
    if (!scheme.empty()) e["scheme"] = scheme;
    script.push_back(cmd("add-element", {{"node", node}, {"element", e}}));
  };
  auto relate = [&](const std::string& node, const std::string& s, const std::string& t, const std::string& type) {
    script.push_back(cmd("relate", {{"node", node}, {"source", s}, {"target", t}, {"type", type}}));
  };

  element("technical", "o1", "H1", "Opinion", "Y2 delivered the most features this year", "Y2");
  element("technical", "o2", "P1", "Opinion", "Y4 writes the most reliable code", "Y4");
  element("technical", "q1", "I1", "Problem", "Does the feature count account for defects?", "");
  element("technical", "a1", "L2", "Proposition", "Defect data shows Y2's features were stable", "");
  relate("technical", "q1", "o1", "Query");
  relate("technical", "a1", "q1", "Disagree");
  relate("technical", "a1", "o1", "Support");
  relate("technical", "o2", "o1", "Neutral");

  element("collaboration", "o3", "L1", "Opinion", "Y1 should lead cross-team work", "Y1");
  element("collaboration", "o4", "I2", "Opinion", "Y3 mentors new colleagues well", "Y3");
  element("collaboration", "d1", "H2", "Proposition", "Y1 missed three cross-team deadlines", "");
  element("collaboration", "s1", "P2", "Proposition", "Mentoring hours are logged for Y3", "");
  relate("collaboration", "d1", "o3", "Disagree");
  relate("collaboration", "s1", "o4", "Supplement");

  script.push_back(cmd("advance", {{"stage", "SchemeEvaluation"}}));
  script.push_back(cmd("set-matrix", {{"node", "technical"}, {"matrix", technical_matrix}}));
  script.push_back(cmd("set-matrix", {{"node", "collaboration"}, {"matrix", collaboration_matrix}}));

  // Submissions come from whoever the round-robin appointment assigns, so
  // replay the same selection here to learn the assignment.
  Session probe = create_session("probe", "", "");
  decompose_problem(probe, outline.get<TaskOutline>());
  select_panel(probe, pool.get<GroupPool>(), alternatives, stage1.get<SelectionStage>(),
               stage2.get<SelectionStage>(), 1);
  Assignment assignment = appoint_tasks(probe);
  std::size_t index = 0;
  for (const auto& [node, evaluators] : assignment.by_node) {
    const auto& base = node == "technical" ? technical_base : collaboration_base;
    for (const auto& e : evaluators) {
      script.push_back(cmd("submit-ranking",
                           {{"node", node}, {"evaluator", e}, {"scores", scores_for(base, index++)}, {"weight", 1.0}}));
    }
  }

  script.push_back(cmd("advance", {{"stage", "SchemeSelection"}}));
  script.push_back(cmd("run-decision", {{"node", "technical"}}));
  script.push_back(cmd("run-decision", {{"node", "collaboration"}}));
  script.push_back(cmd("advance", {{"stage", "SchemeVerification"}}));
  script.push_back(cmd("advance", {{"stage", "GeneralApplication"}}));

  Session session = create_session("demo-performance", "Annual work-performance evaluation",
                                    "Evaluate the work performance of four staff members Y1..Y4 with one "
                                    "evaluator from each of five groups: higher authorities, peers, lower "
                                    "authorities, independent outsiders and the staff members themselves.");
  json doc = session_document(session);
  doc["script"] = std::move(script);
  return doc;
}

}  // namespace ontogdss
