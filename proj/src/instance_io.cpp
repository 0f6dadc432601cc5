#include "cargoload/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "cargoload/errors.hpp"

namespace cargoload {

using nlohmann::json;

json instance_to_json(const ProblemInstance& inst) {
  json doc;
  doc["containers"] = json::array();
  for (const auto& c : inst.containers)
    doc["containers"].push_back({{"id", c.id}, {"weight", c.weight}, {"ctype", static_cast<int>(c.ctype)}});
  doc["slots"] = json::array();
  for (const auto& s : inst.slots) doc["slots"].push_back({{"index", s.index}, {"distance", s.distance}});
  doc["w_max"] = inst.w_max;
  doc["r_min"] = inst.r_min;
  doc["r_max"] = inst.r_max;
  doc["shear"] = json::array();
  for (const auto& k : inst.shear.knots()) doc["shear"].push_back({k.distance, k.limit});
  return doc;
}

ProblemInstance instance_from_json(const json& doc) {
  try {
    ProblemInstance inst;
    for (const auto& c : doc.at("containers")) {
      const int t = c.at("ctype").get<int>();
      if (t < 1 || t > 3) throw ConfigError("ctype must be 1, 2 or 3");
      inst.containers.push_back({c.at("id").get<int>(), c.at("weight").get<double>(), static_cast<ContainerType>(t)});
    }
    for (const auto& s : doc.at("slots")) inst.slots.push_back({s.at("index").get<int>(), s.at("distance").get<double>()});
    inst.w_max = doc.at("w_max").get<double>();
    inst.r_min = doc.at("r_min").get<double>();
    inst.r_max = doc.at("r_max").get<double>();
    std::vector<ShearKnot> knots;
    for (const auto& k : doc.at("shear")) {
      if (!k.is_array() || k.size() != 2) throw ConfigError("shear knots must be [distance, limit] pairs");
      knots.push_back({k[0].get<double>(), k[1].get<double>()});
    }
    inst.shear = ShearProfile(std::move(knots));
    return inst;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed instance: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  auto inst = instance_from_json(read_json_file(path));
  auto issues = validate_instance(inst);
  if (!issues.empty()) {
    std::ostringstream msg;
    msg << path.string() << ": invalid instance";
    for (const auto& issue : issues) msg << "; " << issue;
    throw ConfigError(msg.str());
  }
  return inst;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw ConfigError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void save_instance(const std::filesystem::path& path, const ProblemInstance& inst) {
  write_text_file(path, instance_to_json(inst).dump(2) + "\n");
}

}  // namespace cargoload
