#include "rftdist/fetch.hpp"

#include <httplib.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rftdist/error.hpp"

namespace rftdist::seq {

namespace {

bool valid_accession(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::string unique_suffix() {
  static std::atomic<unsigned> counter{0};
  return std::to_string(::getpid()) + "." + std::to_string(counter.fetch_add(1));
}

// Rewrites the first header so its identifier is the bare accession; the
// original identifier (often versioned, e.g. KC891137.1) stays in the
// description.
std::vector<DnaRecord> normalize_fetched(const std::string& accession, const std::string& fasta) {
  auto records = parse_fasta(std::string_view(fasta));
  if (records.empty()) throw Error("no FASTA record returned for " + accession);
  records.resize(1);
  auto& rec = records.front();
  if (rec.id != accession) {
    rec.description = rec.description.empty() ? rec.id : rec.id + " " + rec.description;
    rec.id = accession;
  }
  return records;
}

}  // namespace

HttpSequenceSource::HttpSequenceSource(std::string endpoint, std::chrono::seconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
  const auto scheme_end = endpoint_.find("://");
  if (scheme_end == std::string::npos) throw InvalidArgument("endpoint needs a scheme: " + endpoint_);
  const auto path_start = endpoint_.find('/', scheme_end + 3);
  origin_ = endpoint_.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : endpoint_.substr(path_start);
}

std::string HttpSequenceSource::fetch_fasta(const std::string& accession) {
  httplib::Client client(origin_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_follow_location(true);
  const httplib::Params params{
      {"db", "nuccore"}, {"id", accession}, {"rettype", "fasta"}, {"retmode", "text"}};
  auto res = client.Get(path_, params, httplib::Headers{});
  if (!res) {
    throw Error("request for " + accession + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error("request for " + accession + " returned HTTP " + std::to_string(res->status));
  }
  if (res->body.empty() || res->body.front() != '>') {
    throw Error("response for " + accession + " is not FASTA");
  }
  return res->body;
}

std::filesystem::path resolve_cache_dir(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv(kCacheDirEnv); env != nullptr && *env != '\0') return env;
  return fallback;
}

std::string resolve_endpoint() {
  if (const char* env = std::getenv(kEndpointEnv); env != nullptr && *env != '\0') return env;
  return kDefaultFetchEndpoint;
}

std::filesystem::path cache_path(const std::filesystem::path& cache_dir,
                                 const std::string& accession) {
  if (!valid_accession(accession)) throw InvalidArgument("invalid accession '" + accession + "'");
  return cache_dir / (accession + ".fasta");
}

bool store_in_cache(const std::filesystem::path& cache_dir, const std::string& accession,
                    const std::string& fasta) {
  const auto target = cache_path(cache_dir, accession);
  std::filesystem::create_directories(cache_dir);
  const auto temp = cache_dir / ("." + accession + ".tmp." + unique_suffix());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << fasta;
    if (!out) throw Error("cannot write cache entry " + temp.string());
  }
  // link(2) refuses to replace an existing name, so the first writer wins.
  const bool created = ::link(temp.c_str(), target.c_str()) == 0;
  std::error_code ec;
  std::filesystem::remove(temp, ec);
  if (!created && !std::filesystem::exists(target)) {
    throw Error("cannot publish cache entry " + target.string());
  }
  return created;
}

std::vector<DnaRecord> fetch_accessions(std::span<const std::string> ids,
                                        const std::filesystem::path& cache_dir,
                                        SequenceSource* source) {
  std::vector<DnaRecord> out;
  std::vector<std::string> missing;
  for (const auto& id : ids) {
    const auto path = cache_path(cache_dir, id);
    if (std::filesystem::exists(path)) {
      auto records = read_fasta_file(path);
      if (records.empty()) throw ParseError("cache entry " + path.string() + " is empty", 1);
      out.push_back(std::move(records.front()));
      out.back().id = id;
      continue;
    }
    if (source == nullptr) {
      missing.push_back(id);
      continue;
    }
    try {
      auto records = normalize_fetched(id, source->fetch_fasta(id));
      const std::string text = to_fasta(records);
      store_in_cache(cache_dir, id, text);
      // Re-read so a concurrent writer that won the race is what we return.
      auto cached = read_fasta_file(path);
      out.push_back(std::move(cached.front()));
      out.back().id = id;
    } catch (const std::exception&) {
      missing.push_back(id);
    }
  }
  if (!missing.empty()) {
    throw UnavailableError("accessions not in cache and not retrievable", std::move(missing));
  }
  return out;
}

std::vector<DnaRecord> fetch_accessions(std::span<const std::string> ids,
                                        const std::filesystem::path& cache_dir,
                                        const FetchOptions& options) {
  if (!options.allow_network) return fetch_accessions(ids, cache_dir, nullptr);
  HttpSequenceSource source(options.endpoint, options.timeout);
  return fetch_accessions(ids, cache_dir, &source);
}

}  // namespace rftdist::seq
