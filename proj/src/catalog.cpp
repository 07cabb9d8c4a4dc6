#include "nfc/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nfc {

std::string data_dir() {
  if (const char *env = std::getenv("NFC_DATA_DIR")) return env;
#ifdef NFC_DATA_DIR_DEFAULT
  return NFC_DATA_DIR_DEFAULT;
#else
  return "data";
#endif
}

std::vector<CatalogEntry> parse_catalog_text(const std::string &text,
                                             const std::string &origin) {
  std::vector<CatalogEntry> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string &msg) {
    throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "group") {
      CatalogEntry e;
      std::string kw;
      if (!(ls >> e.name >> kw >> e.degree) || kw != "degree" || e.degree <= 0)
        fail("expected `group <name> degree <n>`");
      out.push_back(e);
    } else if (word == "gen") {
      if (out.empty()) fail("`gen` before any `group` header");
      std::string rest;
      std::getline(ls, rest);
      try {
        out.back().generators.push_back(Perm::parse_cycles(rest, out.back().degree));
      } catch (const std::invalid_argument &ex) {
        fail(ex.what());
      }
    } else {
      fail("unknown directive `" + word + "`");
    }
  }
  for (auto &e : out)
    if (e.generators.empty())
      throw std::invalid_argument(origin + ": group " + e.name + " has no generators");
  return out;
}

std::vector<CatalogEntry> parse_catalog(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open catalog file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_catalog_text(ss.str(), path);
}

std::string catalog_entry_text(const CatalogEntry &e) {
  std::ostringstream os;
  os << "group " << e.name << " degree " << e.degree << "\n";
  for (const Perm &g : e.generators) os << "gen " << g.cycle_str() << "\n";
  return os.str();
}

const std::vector<CatalogEntry> &bundled_catalog() {
  static std::vector<CatalogEntry> cat = parse_catalog(data_dir() + "/catalog.txt");
  return cat;
}

CatalogEntry catalog_group(const std::string &name) {
  for (const auto &e : bundled_catalog())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown catalog group: " + name);
}

}  // namespace nfc
