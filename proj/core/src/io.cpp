#include "msc/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace msc {

namespace {

using json = nlohmann::json;

class Reader {
 public:
  Reader(std::string_view text, std::string source) : source_(std::move(source)) {
    try {
      doc_ = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      throw ParseError(source_ + ":byte " + std::to_string(e.byte), "malformed JSON");
    }
    if (!doc_.is_object()) fail("", "top level must be an object");
  }

  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
    throw ParseError(source_ + ":" + (pointer.empty() ? "/" : pointer), what);
  }

  const json& doc() const { return doc_; }

  const json& member(const json& node, const std::string& pointer, const char* key) const {
    auto it = node.find(key);
    if (it == node.end()) fail(pointer, std::string("missing key '") + key + "'");
    return *it;
  }

  const json& array(const json& node, const std::string& pointer) const {
    if (!node.is_array()) fail(pointer, "expected an array");
    return node;
  }

  Universe universe() const {
    const json& list = array(member(doc_, "", "universe"), "/universe");
    std::vector<std::string> names;
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (!list[k].is_string()) fail("/universe/" + std::to_string(k), "identifiers must be strings");
      names.push_back(list[k].get<std::string>());
    }
    try {
      return Universe(std::move(names));
    } catch (const Error& e) {
      fail("/universe", e.what());
    }
  }

  /// Members in file order, as universe indices.
  std::vector<Index> members(const json& node, const std::string& pointer, const Universe& u) const {
    const json& list = array(node, pointer);
    if (list.empty()) fail(pointer, "a menu must be non-empty");
    std::vector<Index> out;
    for (std::size_t k = 0; k < list.size(); ++k) {
      std::string at = pointer + "/" + std::to_string(k);
      if (!list[k].is_string()) fail(at, "alternatives must be strings");
      auto idx = u.find(list[k].get<std::string>());
      if (!idx) fail(at, "unknown alternative '" + list[k].get<std::string>() + "'");
      if (std::find(out.begin(), out.end(), *idx) != out.end()) fail(at, "duplicate alternative");
      out.push_back(*idx);
    }
    return out;
  }

  /// A probability-like number: decimal string or JSON number, checked against [0,1].
  std::pair<double, std::string> probability(const json& node, const std::string& pointer) const {
    double value = 0.0;
    std::string literal;
    if (node.is_string()) {
      literal = node.get<std::string>();
      if (!is_decimal_literal(literal)) fail(pointer, "'" + literal + "' is not a decimal number");
      value = to_double(parse_decimal(literal));
    } else if (node.is_number()) {
      value = node.get<double>();
    } else {
      fail(pointer, "expected a decimal string or a number");
    }
    if (!(value >= 0.0 && value <= 1.0)) {
      fail(pointer, "range error: " + (literal.empty() ? format_double(value) : literal) +
                        " is outside [0,1]");
    }
    return {value, literal};
  }

 private:
  std::string source_;
  json doc_;
};

/// Permutation taking file order to canonical (sorted) order.
std::vector<std::size_t> canonical_order(const std::vector<Index>& members) {
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return members[a] < members[b]; });
  return order;
}

json names(const Menu& menu, const Universe& u) {
  json out = json::array();
  for (Index alt : menu) out.push_back(u.name(alt));
  return out;
}

}  // namespace

DocumentKind detect_document(std::string_view text, const std::string& source) {
  Reader reader(text, source);
  if (reader.doc().contains("blocks")) return DocumentKind::model;
  if (reader.doc().contains("menus")) return DocumentKind::dataset;
  reader.fail("", "document has neither 'menus' nor 'blocks'");
}

ChoiceDataset parse_dataset(std::string_view text, const std::string& source) {
  Reader reader(text, source);
  ChoiceDataset data(reader.universe());
  const json& menus = reader.array(reader.member(reader.doc(), "", "menus"), "/menus");
  for (std::size_t m = 0; m < menus.size(); ++m) {
    const std::string at = "/menus/" + std::to_string(m);
    const json& record = menus[m];
    if (!record.is_object()) reader.fail(at, "menu records must be objects");
    std::vector<Index> members = reader.members(reader.member(record, at, "members"), at + "/members",
                                                data.universe());
    const json& probs = reader.array(reader.member(record, at, "probabilities"), at + "/probabilities");
    if (probs.size() != members.size()) {
      reader.fail(at + "/probabilities", "expected " + std::to_string(members.size()) + " probabilities");
    }
    std::vector<double> values(members.size());
    std::vector<std::string> literals(members.size());
    bool all_literal = true;
    for (std::size_t k = 0; k < probs.size(); ++k) {
      auto [v, lit] = reader.probability(probs[k], at + "/probabilities/" + std::to_string(k));
      values[k] = v;
      literals[k] = lit;
      all_literal = all_literal && !lit.empty();
    }
    Menu menu(members);
    if (data.contains(menu)) reader.fail(at, "menu " + to_string(menu, data.universe()) + " listed twice");
    auto order = canonical_order(members);
    Vector p(static_cast<Eigen::Index>(members.size()));
    std::vector<std::string> decimals;
    for (std::size_t k = 0; k < order.size(); ++k) {
      p[static_cast<Eigen::Index>(k)] = values[order[k]];
      if (all_literal) decimals.push_back(literals[order[k]]);
    }
    data.set(menu, std::move(p), std::move(decimals));
  }
  return data;
}

MscModel parse_model(std::string_view text, const std::string& source) {
  Reader reader(text, source);
  MscModel model(reader.universe());
  if (auto it = reader.doc().find("name"); it != reader.doc().end() && it->is_string()) {
    model.name = it->get<std::string>();
  }
  if (auto it = reader.doc().find("provenance"); it != reader.doc().end() && it->is_string()) {
    model.provenance = it->get<std::string>();
  }
  const json& blocks = reader.array(reader.member(reader.doc(), "", "blocks"), "/blocks");
  for (std::size_t m = 0; m < blocks.size(); ++m) {
    const std::string at = "/blocks/" + std::to_string(m);
    const json& record = blocks[m];
    if (!record.is_object()) reader.fail(at, "block records must be objects");
    std::vector<Index> members = reader.members(reader.member(record, at, "menu"), at + "/menu",
                                                model.universe());
    const std::size_t n = members.size();
    const json& rows = reader.array(reader.member(record, at, "Q"), at + "/Q");
    if (rows.size() != n) reader.fail(at + "/Q", "expected " + std::to_string(n) + " rows");
    const json& pi = reader.array(reader.member(record, at, "pi"), at + "/pi");
    if (pi.size() != n) reader.fail(at + "/pi", "expected " + std::to_string(n) + " entries");

    auto order = canonical_order(members);
    Matrix q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Vector p(static_cast<Eigen::Index>(n));
    for (std::size_t a = 0; a < n; ++a) {
      const std::string row_at = at + "/Q/" + std::to_string(order[a]);
      const json& row = reader.array(rows[order[a]], row_at);
      if (row.size() != n) reader.fail(row_at, "expected " + std::to_string(n) + " entries");
      for (std::size_t b = 0; b < n; ++b) {
        q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            reader.probability(row[order[b]], row_at + "/" + std::to_string(order[b])).first;
      }
      p[static_cast<Eigen::Index>(a)] =
          reader.probability(pi[order[a]], at + "/pi/" + std::to_string(order[a])).first;
    }
    Menu menu(members);
    if (model.contains(menu)) reader.fail(at, "menu " + to_string(menu, model.universe()) + " listed twice");
    model.set_block(menu, ModelBlock{std::move(q), std::move(p)});
  }
  return model;
}

std::string dump_dataset(const ChoiceDataset& data) {
  const Universe& u = data.universe();
  json doc;
  doc["universe"] = u.names();
  doc["menus"] = json::array();
  for (const auto& [menu, entry] : data.entries()) {
    json probs = json::array();
    for (std::size_t k = 0; k < menu.size(); ++k) {
      probs.push_back(entry.decimals.empty()
                          ? format_double(entry.probabilities[static_cast<Eigen::Index>(k)])
                          : entry.decimals[k]);
    }
    doc["menus"].push_back({{"members", names(menu, u)}, {"probabilities", probs}});
  }
  return doc.dump(2) + "\n";
}

std::string dump_model(const MscModel& model) {
  const Universe& u = model.universe();
  json doc;
  doc["name"] = model.name;
  doc["provenance"] = model.provenance;
  doc["universe"] = u.names();
  doc["blocks"] = json::array();
  for (const auto& [menu, block] : model.blocks()) {
    json q = json::array();
    for (Eigen::Index a = 0; a < block.q.rows(); ++a) {
      json row = json::array();
      for (Eigen::Index b = 0; b < block.q.cols(); ++b) row.push_back(format_double(block.q(a, b)));
      q.push_back(std::move(row));
    }
    json pi = json::array();
    for (Eigen::Index a = 0; a < block.pi.size(); ++a) pi.push_back(format_double(block.pi[a]));
    doc["blocks"].push_back({{"menu", names(menu, u)}, {"Q", q}, {"pi", pi}});
  }
  return doc.dump(2) + "\n";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ChoiceDataset load_dataset(const std::filesystem::path& path) {
  return parse_dataset(read_text(path), path.string());
}

MscModel load_model(const std::filesystem::path& path) { return parse_model(read_text(path), path.string()); }

namespace {

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace

void save_dataset(const ChoiceDataset& data, const std::filesystem::path& path) {
  write_text(dump_dataset(data), path);
}

void save_model(const MscModel& model, const std::filesystem::path& path) {
  write_text(dump_model(model), path);
}

}  // namespace msc
