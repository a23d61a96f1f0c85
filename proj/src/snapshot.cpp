#include "sqg/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace sqg {
namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; add byte swaps here first");

std::string strip_known_extension(const std::string& path) {
  if (path.size() > 4 && (path.ends_with(".bin") || path.ends_with(".json")))
    return path.substr(0, path.rfind('.'));
  return path;
}

}  // namespace

void write_snapshot(const std::string& base, const PhysicalField& u,
                    double time, const std::string& name) {
  const Grid& g = u.grid();

  std::ofstream bin(base + ".bin", std::ios::binary | std::ios::trunc);
  if (!bin) throw ConfigError("cannot open " + base + ".bin for writing");
  bin.write(reinterpret_cast<const char*>(u.data()),
            static_cast<std::streamsize>(u.size() * sizeof(double)));
  if (!bin) throw ConfigError("short write on " + base + ".bin");
  bin.close();

  nlohmann::json side;
  side["n"] = g.n;
  side["length"] = g.length;
  side["d"] = g.dim;
  side["time"] = time;
  side["name"] = name;
  std::ofstream js(base + ".json", std::ios::trunc);
  if (!js) throw ConfigError("cannot open " + base + ".json for writing");
  js << side.dump(2) << "\n";
}

std::pair<PhysicalField, SnapshotMeta> read_snapshot(const std::string& path) {
  const std::string base = strip_known_extension(path);
  std::ifstream js(base + ".json");
  if (!js) throw ConfigError("missing snapshot sidecar " + base + ".json");
  nlohmann::json side;
  try {
    js >> side;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("corrupt snapshot sidecar " + base + ".json: " +
                      e.what());
  }

  SnapshotMeta meta;
  try {
    meta.n = side.at("n").get<int>();
    meta.length = side.at("length").get<double>();
    meta.d = side.at("d").get<int>();
    meta.time = side.at("time").get<double>();
    meta.name = side.value("name", "");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("incomplete snapshot sidecar: " + std::string(e.what()));
  }

  Grid g(meta.n, meta.length, meta.d);
  std::ifstream bin(base + ".bin", std::ios::binary);
  if (!bin) throw ConfigError("missing snapshot data " + base + ".bin");
  std::vector<double> values(g.size());
  bin.read(reinterpret_cast<char*>(values.data()),
           static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (bin.gcount() !=
      static_cast<std::streamsize>(values.size() * sizeof(double)))
    throw ConfigError("snapshot data truncated: " + base + ".bin");

  return {PhysicalField(g, std::move(values)), meta};
}

}  // namespace sqg
