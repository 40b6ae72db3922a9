#include "uaforge/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "uaforge/error.hpp"

namespace uaforge {

  using nlohmann::json;

  std::string algebra_to_json(FiniteAlgebra const& alg) {
    json j;
    j["name"] = alg.name();
    j["size"] = alg.size();
    if (!alg.element_names().empty()) {
      j["elements"] = alg.element_names();
    }
    json ops = json::array();
    for (std::size_t i = 0; i < alg.signature().size(); ++i) {
      ops.push_back({{"symbol", alg.signature()[i].name},
                     {"arity", alg.signature()[i].arity},
                     {"table", alg.table(i)}});
    }
    j["operations"] = std::move(ops);
    return j.dump() + "\n";
  }

  FiniteAlgebra algebra_from_json(std::string_view text) {
    json j;
    try {
      j = json::parse(text);
    } catch (json::parse_error const& e) {
      throw Error(std::string("invalid algebra JSON: ") + e.what());
    }
    try {
      std::size_t size = j.at("size").get<std::size_t>();
      if (size == 0) {
        throw Error("algebra size must be positive");
      }
      std::vector<std::string> names;
      if (j.contains("elements")) {
        names = j.at("elements").get<std::vector<std::string>>();
      }
      std::vector<OperationSymbol>      symbols;
      std::vector<std::vector<Element>> tables;
      for (auto const& op : j.at("operations")) {
        symbols.push_back({op.at("symbol").get<std::string>(), op.at("arity").get<std::size_t>()});
        tables.push_back(op.at("table").get<std::vector<Element>>());
      }
      return FiniteAlgebra(j.at("name").get<std::string>(),
                           Signature(std::move(symbols)),
                           size,
                           std::move(tables),
                           std::move(names));
    } catch (json::exception const& e) {
      throw Error(std::string("malformed algebra file: ") + e.what());
    }
  }

  FiniteAlgebra load_algebra(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return algebra_from_json(buf.str());
  }

  void save_algebra(FiniteAlgebra const& alg, std::filesystem::path const& path) {
    std::ofstream out(path);
    if (!out) {
      throw Error("cannot write " + path.string());
    }
    out << algebra_to_json(alg);
  }

  std::string partition_to_json(Partition const& p) {
    return json(p.blocks()).dump();
  }

  Partition partition_from_json(std::string_view text, std::size_t size) {
    try {
      auto blocks = json::parse(text).get<std::vector<std::vector<Element>>>();
      return Partition::from_blocks(size, blocks);
    } catch (json::exception const& e) {
      throw Error(std::string("malformed partition: ") + e.what());
    }
  }

}  // namespace uaforge
