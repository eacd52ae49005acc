#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string_view>

#include "rftdist/seqmodel.hpp"

// Named sequences used by the experiments. Real records come from the
// accession cache (see fetch.hpp); they are not shipped with the source and
// must be fetched once with `rftdist fetch --panel all`.
namespace rftdist::fixtures {

// Exon: human mitochondrial COI, 386 bp.
inline constexpr std::string_view kExonAccession = "KC750830";
inline constexpr std::size_t kExonLength = 386;
// Intron: Heteractis crispa COI, 654 bp.
inline constexpr std::string_view kIntronAccession = "JQ918751";
inline constexpr std::size_t kIntronLength = 654;

struct InfluenzaEntry {
  std::string_view accession;
  std::string_view strain;
  std::string_view subtype;
};

// Neuraminidase gene panel, 31 records.
inline constexpr std::array<InfluenzaEntry, 31> kInfluenzaPanel{{
    {"KC891137", "A/Illinois/05/2012", "H1N1"},
    {"KC891134", "A/Illinois/06/2012", "H1N1"},
    {"KC891128", "A/Illinois/08/2012", "H1N1"},
    {"KC891564", "A/Illinois/01/2012", "H1N1"},
    {"KC891131", "A/Illinois/07/2012", "H1N1"},
    {"KC893127", "A/Illinois/13/2012", "H3N2"},
    {"KC893131", "A/Illinois/12/2012", "H3N2"},
    {"DQ017515", "A/mallard/Alberta/24/01", "H7N3"},
    {"CY060664", "A/Ontario/315015/2009", "H1N1"},
    {"JF789604", "A/mallard/Czech Republic/13438-29K/2010", "H11N9"},
    {"GQ184333", "A/Baikal teal/Hongze/14/2005", "H11N9"},
    {"KF021599", "A/Shanghai/02/2013", "H7N9"},
    {"KC885958", "A/Zhejiang/DTID-ZJU01/2013", "H7N9"},
    {"KC994454", "A/Fujian/1/2013", "H7N9"},
    {"KC853765", "A/Hangzhou/1/2013", "H7N9"},
    {"KF001514", "A/Hangzhou/2/2013", "H7N9"},
    {"KF001517", "A/Hangzhou/3/2013", "H7N9"},
    {"KC896776", "A/Nanjing/1/2013", "H7N9"},
    {"KC853231", "A/Shanghai/4664T/2013", "H7N9"},
    {"KF018055", "A/Taiwan/T02081/2013", "H7N9"},
    {"KF018047", "A/Taiwan/S02076/2013", "H7N9"},
    {"CY147062", "A/duck/Anhui/SC702/2013", "H7N9"},
    {"CY147070", "A/duck/Zhejiang/SC410/2013", "H7N9"},
    {"CY146910", "A/chicken/Guangdong/SD641/2013", "H7N9"},
    {"JN244222", "A/wild bird/Korea/A14/2011", "H7N9"},
    {"CY029883", "A/sharp-tailed sandpiper/Australia/10/2004", "H11N9"},
    {"AB298284", "A/duck/Hokkaido/W245/2004", "H11N9"},
    {"AB472035", "A/duck/Tsukuba/239/2005", "H11N9"},
    {"CY025199", "A/sharp-tailed sandpiper/Australia/6/2004", "H11N9"},
    {"AB472034", "A/duck/Tsukuba/164/2005", "H11N9"},
    {"AB472033", "A/duck/Tsukuba/441/2005", "H11N9"},
}};

// Fixed seeds for the stand-in sequences below.
inline constexpr std::uint64_t kExonSurrogateSeed = 386;
inline constexpr std::uint64_t kIntronSurrogateSeed = 654;

// $RFTDIST_DATA_DIR, else the directory configured at build time.
std::filesystem::path data_dir();
// $RFTDIST_CACHE_DIR, else <data_dir>/cache.
std::filesystem::path cache_dir();

// The cached record for `accession`, or nullopt if it has not been fetched.
std::optional<seq::DnaRecord> load_cached(std::string_view accession);

// Seeded stand-ins with the fixture lengths: a coding-like (period-3) exon
// and an intron-like sequence with a period-2 repeat. Ids carry a "-surrogate" suffix.
seq::DnaRecord exon_surrogate();
seq::DnaRecord intron_surrogate();

}  // namespace rftdist::fixtures
