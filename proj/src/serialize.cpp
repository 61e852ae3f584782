#include "stagecraft/serialize.hpp"

#include <json.hpp>

namespace stagecraft {

using Json = nlohmann::ordered_json;

namespace {

Json face_json(const TileSystem& ts, GlueId g) {
  if (g == kNullGlue) return nullptr;
  return ts.glue_info(g).label;
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw FormatError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(where + ": missing section '" + key + "'");
  return *it;
}

int as_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw FormatError(where + ": expected an integer");
  return v.get<int>();
}

}  // namespace

std::string serialize(const StagedSystem& sys) {
  const TileSystem& ts = sys.tiles;
  Json doc;
  doc["temperature"] = ts.temperature();
  Json glues = Json::object();
  for (GlueId g = 1; g <= ts.glue_count(); ++g) glues[ts.glue_info(g).label] = ts.glue_info(g).strength;
  doc["glues"] = std::move(glues);
  Json tiles = Json::object();
  for (int t = 0; t < ts.tile_count(); ++t) {
    const TileType& tt = ts.tile(t);
    Json faces = Json::array();
    for (GlueId g : tt.faces) faces.push_back(face_json(ts, g));
    tiles[tt.name] = std::move(faces);
  }
  doc["tiles"] = std::move(tiles);

  Json stages = Json::array();
  for (const auto& stage : sys.stages) {
    Json bins = Json::array();
    for (const BinSpec& b : stage) {
      Json bin;
      Json adds = Json::array();
      for (int t : b.adds) adds.push_back(ts.tile(t).name);
      bin["adds"] = std::move(adds);
      Json from = Json::array();
      for (const BinRef& r : b.from) from.push_back(Json::array({r.stage, r.bin}));
      bin["from"] = std::move(from);
      bins.push_back(std::move(bin));
    }
    stages.push_back(std::move(bins));
  }
  Json output = Json::array();
  for (const BinRef& r : sys.output) output.push_back(Json::array({r.stage, r.bin}));
  doc["mixgraph"] = Json{{"stages", std::move(stages)}, {"output", std::move(output)}};

  if (sys.target) {
    std::string ascii = render_ascii(sys.target->shape);
    Json rows = Json::array();
    std::size_t start = 0;
    while (start < ascii.size()) {
      std::size_t end = ascii.find('\n', start);
      if (end == std::string::npos) end = ascii.size();
      rows.push_back(ascii.substr(start, end - start));
      start = end + 1;
    }
    doc["target"] = Json{{"ascii", std::move(rows)}, {"scale", sys.target->scale}};
  } else {
    doc["target"] = nullptr;
  }
  Json declared = Json::object();
  for (const auto& [k, v] : sys.declared) declared[k] = v;
  doc["meta"] = Json{{"construction", sys.construction}, {"declared", std::move(declared)}};
  return doc.dump(2) + "\n";
}

StagedSystem deserialize(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  const std::string top = "system";
  int tau = as_int(require(doc, "temperature", top), "temperature");
  StagedSystem sys;
  try {
    sys.tiles = TileSystem(tau);
  } catch (const TileSystemError& e) {
    throw FormatError(std::string("temperature: ") + e.what());
  }

  const Json& glues = require(doc, "glues", top);
  if (!glues.is_object()) throw FormatError("glues: expected an object of label -> strength");
  for (const auto& [label, strength] : glues.items()) {
    try {
      sys.tiles.add_glue(label, as_int(strength, "glues." + label));
    } catch (const TileSystemError& e) {
      throw FormatError("glues." + label + ": " + e.what());
    }
  }

  const Json& tiles = require(doc, "tiles", top);
  if (!tiles.is_object()) throw FormatError("tiles: expected an object of name -> [N,E,S,W]");
  for (const auto& [name, faces] : tiles.items()) {
    const std::string where = "tiles." + name;
    if (!faces.is_array() || faces.size() != 4) throw FormatError(where + ": expected 4 faces [N,E,S,W]");
    std::array<GlueId, 4> ids{};
    for (int d = 0; d < 4; ++d) {
      const Json& f = faces[d];
      if (f.is_null()) continue;
      if (!f.is_string()) throw FormatError(where + ": face must be a glue label or null");
      const std::string label = f.get<std::string>();
      if (!sys.tiles.has_glue(label)) throw FormatError(where + ": unknown glue label '" + label + "'");
      ids[d] = sys.tiles.glue(label);
    }
    try {
      sys.tiles.add_tile(name, ids);
    } catch (const TileSystemError& e) {
      throw FormatError(where + ": " + e.what());
    }
  }

  const Json& mg = require(doc, "mixgraph", top);
  const Json& stages = require(mg, "stages", "mixgraph");
  if (!stages.is_array()) throw FormatError("mixgraph.stages: expected an array");
  auto parse_ref = [](const Json& r, const std::string& where) {
    if (!r.is_array() || r.size() != 2) throw FormatError(where + ": expected [stage, bin]");
    return BinRef{as_int(r[0], where), as_int(r[1], where)};
  };
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const std::string sw = "mixgraph.stages[" + std::to_string(i) + "]";
    if (!stages[i].is_array()) throw FormatError(sw + ": expected an array of bins");
    std::vector<BinSpec> bins;
    for (std::size_t j = 0; j < stages[i].size(); ++j) {
      const std::string bw = sw + "[" + std::to_string(j) + "]";
      const Json& b = stages[i][j];
      BinSpec spec;
      const Json& adds = require(b, "adds", bw);
      if (!adds.is_array()) throw FormatError(bw + ".adds: expected an array");
      for (const Json& a : adds) {
        if (!a.is_string()) throw FormatError(bw + ".adds: expected tile names");
        try {
          spec.adds.push_back(sys.tiles.tile_index(a.get<std::string>()));
        } catch (const TileSystemError& e) {
          throw FormatError(bw + ".adds: " + e.what());
        }
      }
      const Json& from = require(b, "from", bw);
      if (!from.is_array()) throw FormatError(bw + ".from: expected an array");
      for (const Json& r : from) spec.from.push_back(parse_ref(r, bw + ".from"));
      bins.push_back(std::move(spec));
    }
    sys.stages.push_back(std::move(bins));
  }
  const Json& output = require(mg, "output", "mixgraph");
  if (!output.is_array()) throw FormatError("mixgraph.output: expected an array");
  for (const Json& r : output) sys.output.push_back(parse_ref(r, "mixgraph.output"));

  const Json& target = require(doc, "target", top);
  if (!target.is_null()) {
    const Json& rows = require(target, "ascii", "target");
    if (!rows.is_array()) throw FormatError("target.ascii: expected an array of rows");
    std::string ascii;
    for (const Json& row : rows) {
      if (!row.is_string()) throw FormatError("target.ascii: rows must be strings");
      ascii += row.get<std::string>() + "\n";
    }
    TargetSpec spec;
    try {
      spec.shape = parse_ascii(ascii);
    } catch (const GeometryError& e) {
      throw FormatError(std::string("target.ascii: ") + e.what());
    }
    spec.scale = as_int(require(target, "scale", "target"), "target.scale");
    sys.target = std::move(spec);
  }

  auto meta = doc.find("meta");
  if (meta != doc.end() && meta->is_object()) {
    if (auto c = meta->find("construction"); c != meta->end() && c->is_string())
      sys.construction = c->get<std::string>();
    if (auto d = meta->find("declared"); d != meta->end() && d->is_object())
      for (const auto& [k, v] : d->items()) sys.declared[k] = as_int(v, "meta.declared." + k);
  }
  return sys;
}

}  // namespace stagecraft
