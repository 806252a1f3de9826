#include "sarcctx/dataset.hpp"

#include <fstream>

#include <json.hpp>

namespace sarcctx {

namespace {

using nlohmann::json;

std::optional<std::vector<std::string>> get_string_list(const json& obj, const char* key,
                                                        const std::string& where) {
  if (!obj.contains(key)) return std::nullopt;
  const json& v = obj.at(key);
  if (!v.is_array()) throw DataError(where + ": field '" + key + "' must be a list");
  std::vector<std::string> out;
  for (const json& item : v) {
    if (!item.is_string()) throw DataError(where + ": field '" + key + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::optional<std::string> get_string(const json& obj, const char* key,
                                      const std::string& where) {
  if (!obj.contains(key)) return std::nullopt;
  const json& v = obj.at(key);
  if (!v.is_string()) throw DataError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

std::vector<RawRecord> read_jsonl_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset: " + path);
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(where + ": invalid JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) throw DataError(where + ": expected an object");
    RawRecord rec;
    auto id = get_string(obj, "id", where);
    rec.id = id ? *id : "line" + std::to_string(line_no);
    auto label = get_string(obj, "label", where);
    if (!label) throw DataError(where + ": missing 'label'");
    try {
      rec.label = parse_label(*label);
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
    rec.prior = get_string(obj, "prior", where);
    rec.current = get_string(obj, "current", where);
    rec.succeeding = get_string(obj, "succeeding", where);
    rec.prior_sents = get_string_list(obj, "prior_sents", where);
    rec.current_sents = get_string_list(obj, "current_sents", where);
    rec.succeeding_sents = get_string_list(obj, "succeeding_sents", where);
    if (!rec.current && !rec.current_sents) {
      throw DataError(where + ": missing 'current' (or 'current_sents')");
    }
    if (!rec.prior && !rec.prior_sents) {
      throw DataError(where + ": missing 'prior' (or 'prior_sents')");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

ConversationInstance preprocess(const RawRecord& rec, const EmoticonLexicon* emoticons) {
  ConversationInstance inst;
  inst.id = rec.id;
  inst.label = rec.label;
  try {
    inst.prior = rec.prior_sents
                     ? preprocess_turn(*rec.prior_sents, Role::prior, emoticons)
                     : preprocess_turn(*rec.prior, Role::prior, emoticons);
    inst.current = rec.current_sents
                       ? preprocess_turn(*rec.current_sents, Role::current, emoticons)
                       : preprocess_turn(*rec.current, Role::current, emoticons);
    if (rec.succeeding_sents) {
      inst.succeeding = preprocess_turn(*rec.succeeding_sents, Role::succeeding, emoticons);
    } else if (rec.succeeding) {
      inst.succeeding = preprocess_turn(*rec.succeeding, Role::succeeding, emoticons);
    }
  } catch (const DataError& e) {
    throw DataError("instance '" + rec.id + "': " + e.what());
  }
  return inst;
}

std::vector<ConversationInstance> preprocess_dataset(const std::vector<RawRecord>& records,
                                                     const EmoticonLexicon* emoticons) {
  std::vector<ConversationInstance> out;
  out.reserve(records.size());
  for (const RawRecord& rec : records) out.push_back(preprocess(rec, emoticons));
  return out;
}

void write_jsonl_dataset(const std::string& path, const std::vector<RawRecord>& records) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write dataset: " + path);
  for (const RawRecord& rec : records) {
    json obj;
    obj["id"] = rec.id;
    obj["label"] = to_string(rec.label);
    if (rec.prior) obj["prior"] = *rec.prior;
    if (rec.current) obj["current"] = *rec.current;
    if (rec.succeeding) obj["succeeding"] = *rec.succeeding;
    if (rec.prior_sents) obj["prior_sents"] = *rec.prior_sents;
    if (rec.current_sents) obj["current_sents"] = *rec.current_sents;
    if (rec.succeeding_sents) obj["succeeding_sents"] = *rec.succeeding_sents;
    out << obj.dump() << "\n";
  }
}

}  // namespace sarcctx
