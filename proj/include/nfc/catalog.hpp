#pragma once

#include <map>
#include <string>
#include <vector>

#include "nfc/group.hpp"

namespace nfc {

struct CatalogEntry {
  std::string name;
  int degree = 0;
  std::vector<Perm> generators;

  PermGroup build() const { return PermGroup(degree, generators); }
};

// Line-oriented catalog: `group <name> degree <n>` headers followed by one
// `gen <cycles>` line per generator; `#` starts a comment.  Parse errors
// carry the line number.
std::vector<CatalogEntry> parse_catalog(const std::string &path);
std::vector<CatalogEntry> parse_catalog_text(const std::string &text,
                                             const std::string &origin = "<text>");

std::string catalog_entry_text(const CatalogEntry &e);

// Bundled catalog (data/catalog.txt, override with NFC_DATA_DIR env).
const std::vector<CatalogEntry> &bundled_catalog();
CatalogEntry catalog_group(const std::string &name);

std::string data_dir();

}  // namespace nfc
