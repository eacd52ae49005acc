#include "rftdist/fixtures.hpp"

#include <cstdlib>
#include <string>

#include "rftdist/fetch.hpp"
#include "rftdist/labkit.hpp"

#ifndef RFTDIST_DEFAULT_DATA_DIR
#define RFTDIST_DEFAULT_DATA_DIR "data"
#endif

namespace rftdist::fixtures {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("RFTDIST_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return RFTDIST_DEFAULT_DATA_DIR;
}

std::filesystem::path cache_dir() { return seq::resolve_cache_dir(data_dir() / "cache"); }

std::optional<seq::DnaRecord> load_cached(std::string_view accession) {
  const std::string id(accession);
  if (!std::filesystem::exists(seq::cache_path(cache_dir(), id))) return std::nullopt;
  const std::vector<std::string> ids{id};
  return seq::fetch_accessions(ids, cache_dir(), nullptr).front();
}

seq::DnaRecord exon_surrogate() {
  return labkit::coding_like_sequence(std::string(kExonAccession) + "-surrogate", kExonLength,
                                      kExonSurrogateSeed);
}

seq::DnaRecord intron_surrogate() {
  return labkit::intron_like_sequence(std::string(kIntronAccession) + "-surrogate", kIntronLength,
                                       kIntronSurrogateSeed);
}

}  // namespace rftdist::fixtures
