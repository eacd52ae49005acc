#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rftdist/seqmodel.hpp"

// Offline-first accession retrieval. Records live in
// <cache_dir>/<accession>.fasta; the network is only consulted on a miss.
namespace rftdist::seq {

inline constexpr const char* kDefaultFetchEndpoint =
    "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/efetch.fcgi";

// Environment overrides.
inline constexpr const char* kCacheDirEnv = "RFTDIST_CACHE_DIR";
inline constexpr const char* kEndpointEnv = "RFTDIST_FETCH_ENDPOINT";

// Returns FASTA text for one accession, or throws.
class SequenceSource {
 public:
  virtual ~SequenceSource() = default;
  virtual std::string fetch_fasta(const std::string& accession) = 0;
};

// GET <endpoint>?db=nuccore&id=<acc>&rettype=fasta&retmode=text
class HttpSequenceSource : public SequenceSource {
 public:
  explicit HttpSequenceSource(std::string endpoint = kDefaultFetchEndpoint,
                              std::chrono::seconds timeout = std::chrono::seconds(30));

  std::string fetch_fasta(const std::string& accession) override;

  const std::string& endpoint() const noexcept { return endpoint_; }

 private:
  std::string endpoint_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  std::chrono::seconds timeout_;
};

struct FetchOptions {
  std::string endpoint = kDefaultFetchEndpoint;
  std::chrono::seconds timeout{30};
  bool allow_network = true;
};

// $RFTDIST_CACHE_DIR if set, else `fallback`.
std::filesystem::path resolve_cache_dir(const std::filesystem::path& fallback);
// $RFTDIST_FETCH_ENDPOINT if set, else the default endpoint.
std::string resolve_endpoint();

std::filesystem::path cache_path(const std::filesystem::path& cache_dir,
                                 const std::string& accession);

// Records for `ids` in request order. Cache hits never touch `source`; misses
// are fetched, written to the cache, and returned. A null source means
// offline. Any accession that cannot be produced raises UnavailableError
// naming every missing id. Each returned record has id == requested accession.
std::vector<DnaRecord> fetch_accessions(std::span<const std::string> ids,
                                        const std::filesystem::path& cache_dir,
                                        SequenceSource* source);

std::vector<DnaRecord> fetch_accessions(std::span<const std::string> ids,
                                        const std::filesystem::path& cache_dir,
                                        const FetchOptions& options);

// Writes `fasta` to the cache entry unless one already exists; the first
// completed write is kept. Returns true if this call created the entry.
bool store_in_cache(const std::filesystem::path& cache_dir, const std::string& accession,
                    const std::string& fasta);

}  // namespace rftdist::seq
