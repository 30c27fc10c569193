#pragma once

// Decision lists and decision sets: decoding MaxSAT assignments into rule
// lists, executing them, validating them against training data, and the
// JSON document format used to store models on disk.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "satdl/dataset.hpp"
#include "satdl/encode.hpp"
#include "satdl/errors.hpp"

namespace satdl {

struct FeatureLiteral {
  int feature = 0;       // 0-based feature index
  bool positive = true;  // literal polarity

  bool operator==(const FeatureLiteral&) const = default;
};

struct Rule {
  std::vector<FeatureLiteral> antecedent;  // empty means a default rule
  int class_id = 0;

  bool operator==(const Rule&) const = default;
};

struct DecisionList {
  std::vector<Rule> rules;  // evaluated in order, first match fires
  int feature_count = 0;
  int class_count = 0;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;

  bool operator==(const DecisionList&) const = default;
};

struct DecisionSet {
  std::vector<Rule> rules;  // unordered; all matching rules fire
  int feature_count = 0;
  int class_count = 0;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;
};

// --- execution -----------------------------------------------------------------

inline bool rule_matches(const Rule& r, const std::vector<std::uint8_t>& bits) {
  for (const auto& lit : r.antecedent)
    if (static_cast<bool>(bits[static_cast<std::size_t>(lit.feature)]) != lit.positive)
      return false;
  return true;
}

struct Prediction {
  int class_id = 0;
  int rule_index = 0;  // which rule fired
};

// First matching rule decides; no match means the list abstains.
inline std::optional<Prediction> predict(const DecisionList& dl,
                                         const std::vector<std::uint8_t>& bits) {
  if (static_cast<int>(bits.size()) != dl.feature_count)
    throw Error("feature vector length " + std::to_string(bits.size()) +
                " does not match model width " + std::to_string(dl.feature_count));
  for (std::size_t r = 0; r < dl.rules.size(); ++r)
    if (rule_matches(dl.rules[r], bits))
      return Prediction{dl.rules[r].class_id, static_cast<int>(r)};
  return std::nullopt;
}

inline std::vector<int> firing_rules(const DecisionSet& dset,
                                     const std::vector<std::uint8_t>& bits) {
  if (static_cast<int>(bits.size()) != dset.feature_count)
    throw Error("feature vector length does not match model width");
  std::vector<int> out;
  for (std::size_t r = 0; r < dset.rules.size(); ++r)
    if (rule_matches(dset.rules[r], bits)) out.push_back(static_cast<int>(r));
  return out;
}

// --- decoding -------------------------------------------------------------------

// Reads a satisfying assignment back into a decision list: nodes are scanned
// in order while used, feature nodes contribute a literal with the node's
// truth value as polarity, a class node closes the current rule. Tolerates
// any model of the encoding, including non-optimal ones with early default
// rules; the validator reports rules that are unreachable because of them.
inline DecisionList decode(const std::vector<bool>& assignment, const VariableLayout& lay,
                           const BinDataset& meta) {
  DecisionList dl;
  dl.feature_count = meta.feature_count;
  dl.class_count = meta.class_count;
  dl.feature_names = meta.feature_names;
  dl.class_names = meta.class_names;

  auto val = [&](int id) { return assignment[static_cast<std::size_t>(id)]; };
  const bool multiclass = lay.class_features > 1;
  std::vector<FeatureLiteral> antecedent;
  bool open_rule = false;
  for (int j = 1; j <= lay.nodes; ++j) {
    if (val(lay.u(j))) break;  // unused nodes form the tail
    int selected = 0;
    for (int r = 1; r <= lay.features + lay.class_features; ++r) {
      if (!val(lay.s(j, r))) continue;
      if (selected != 0)
        throw DecodeError("node " + std::to_string(j) + " selects more than one feature");
      selected = r;
    }
    if (selected == 0)
      throw DecodeError("used node " + std::to_string(j) + " selects no feature");
    if (selected <= lay.features) {
      antecedent.push_back(FeatureLiteral{selected - 1, val(lay.t(j))});
      open_rule = true;
    } else {
      int cls = multiclass ? selected - lay.features - 1 : (val(lay.t(j)) ? 1 : 0);
      dl.rules.push_back(Rule{antecedent, cls});
      antecedent.clear();
      open_rule = false;
    }
  }
  if (open_rule)
    throw DecodeError("final used node is not a leaf; rule left unterminated");
  if (dl.rules.empty()) throw DecodeError("empty model: every node is unused");
  return dl;
}

// --- validation ------------------------------------------------------------------

struct Violation {
  int instance = 0;
  std::optional<int> predicted;  // empty when no rule fired
  int expected = 0;
};

// Simulates the list over every instance; empty result means the list is a
// perfect model of the data.
inline std::vector<Violation> validate_perfect(const DecisionList& dl, const BinDataset& ds) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < ds.instances.size(); ++i) {
    const auto& e = ds.instances[i];
    auto p = predict(dl, e.features);
    if (!p)
      out.push_back(Violation{static_cast<int>(i), std::nullopt, e.class_id});
    else if (p->class_id != e.class_id)
      out.push_back(Violation{static_cast<int>(i), p->class_id, e.class_id});
  }
  return out;
}

// Rules that can never fire because an earlier rule has an empty antecedent.
inline std::vector<int> unreachable_rules(const DecisionList& dl) {
  std::vector<int> out;
  bool dead = false;
  for (std::size_t r = 0; r < dl.rules.size(); ++r) {
    if (dead) out.push_back(static_cast<int>(r));
    if (dl.rules[r].antecedent.empty()) dead = true;
  }
  return out;
}

// --- document format ----------------------------------------------------------------

inline constexpr int kModelFormatVersion = 1;

inline std::string serialize_model(const DecisionList& dl) {
  if (dl.rules.empty()) throw ModelIoError("refusing to serialize an empty model");
  nlohmann::json doc;
  doc["version"] = kModelFormatVersion;
  doc["feature_names"] = dl.feature_names;
  doc["class_names"] = dl.class_names;
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : dl.rules) {
    nlohmann::json literals = nlohmann::json::array();
    for (const auto& lit : r.antecedent)
      literals.push_back({{"feature", dl.feature_names[static_cast<std::size_t>(lit.feature)]},
                          {"negated", !lit.positive}});
    rules.push_back({{"literals", literals},
                     {"class", dl.class_names[static_cast<std::size_t>(r.class_id)]}});
  }
  doc["rules"] = rules;
  return doc.dump(2) + "\n";
}

inline DecisionList deserialize_model(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ModelIoError(std::string("model document is not valid JSON: ") + e.what());
  }
  if (!doc.contains("version") || !doc["version"].is_number_integer() ||
      doc["version"].get<int>() != kModelFormatVersion)
    throw ModelIoError("unsupported or missing model format version");
  DecisionList dl;
  try {
    dl.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    dl.class_names = doc.at("class_names").get<std::vector<std::string>>();
    dl.feature_count = static_cast<int>(dl.feature_names.size());
    dl.class_count = static_cast<int>(dl.class_names.size());
    for (const auto& rj : doc.at("rules")) {
      Rule r;
      for (const auto& lj : rj.at("literals")) {
        auto name = lj.at("feature").get<std::string>();
        auto it = std::find(dl.feature_names.begin(), dl.feature_names.end(), name);
        if (it == dl.feature_names.end())
          throw ModelIoError("rule references unknown feature '" + name + "'");
        r.antecedent.push_back(FeatureLiteral{
            static_cast<int>(it - dl.feature_names.begin()), !lj.at("negated").get<bool>()});
      }
      auto cls = rj.at("class").get<std::string>();
      auto it = std::find(dl.class_names.begin(), dl.class_names.end(), cls);
      if (it == dl.class_names.end())
        throw ModelIoError("rule references unknown class '" + cls + "'");
      r.class_id = static_cast<int>(it - dl.class_names.begin());
      dl.rules.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ModelIoError(std::string("malformed model document: ") + e.what());
  }
  if (dl.rules.empty()) throw ModelIoError("empty model");
  return dl;
}

// --- display -------------------------------------------------------------------------

// Renders the if / else-if cascade form; default rules print as a bare else.
inline std::string render_text(const DecisionList& dl) {
  std::ostringstream os;
  for (std::size_t r = 0; r < dl.rules.size(); ++r) {
    const auto& rule = dl.rules[r];
    if (r > 0) os << "else ";
    if (!rule.antecedent.empty()) {
      os << "if ";
      for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
        if (i) os << " and ";
        const auto& lit = rule.antecedent[i];
        if (!lit.positive) os << "not ";
        os << dl.feature_names[static_cast<std::size_t>(lit.feature)];
      }
      os << " then ";
    }
    os << dl.class_names[static_cast<std::size_t>(rule.class_id)] << '\n';
  }
  return os.str();
}

}  // namespace satdl
