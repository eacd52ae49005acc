#include "rftdist/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rftdist/error.hpp"
#include "rftdist/fetch.hpp"
#include "rftdist/fixtures.hpp"
#include "rftdist/io.hpp"
#include "rftdist/kernels.hpp"
#include "rftdist/labkit.hpp"
#include "rftdist/metric.hpp"
#include "rftdist/phylo.hpp"
#include "rftdist/seqmodel.hpp"
#include "rftdist/transform.hpp"

namespace rftdist::cli {

namespace {

namespace fs = std::filesystem;

// Bad flags or flag combinations (exit code 1).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  // shared
  std::string method = "rft";
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  bool skip_first_term = false;
  std::size_t max_n = transform::kDefaultMaxDimension;
  std::string cache_dir;

  // per command
  std::string input = "-";
  std::size_t peaks = 0;
  bool per_nucleotide = false;
  int decimals = 6;
  std::string kind;
  bool surrogate = false;
  std::string steps;
  double rate = 0.1;
  double noise = 0.0;
  std::size_t count = 200;
  std::string n_list = "256,512,1024,2048";
  std::size_t rounds = 500;
  std::string host;
  std::vector<std::string> ids;
  std::string endpoint;
  int timeout = 30;
  bool offline = false;
  std::string panel;
};

// Files are staged and only written once every one of them has been produced,
// so an error never leaves partial output behind.
class Output {
 public:
  Output(std::ostream& out) : out_(out) {}

  void add(fs::path path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }
  void add_stdout(std::string content) { stdout_ += content; }

  void commit() {
    for (const auto& [path, content] : files_) io::write_atomic(path, content);
    out_ << stdout_;
  }

 private:
  std::ostream& out_;
  std::vector<std::pair<fs::path, std::string>> files_;
  std::string stdout_;
};

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError("'" + item + "' is not a non-negative integer");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

void check_cap(const std::vector<seq::DnaRecord>& records, std::size_t max_n) {
  for (const auto& rec : records) {
    if (rec.length() > max_n) {
      throw ResourceError("record '" + rec.id + "' has " + std::to_string(rec.length()) +
                          " bases, above the --max-n cap of " + std::to_string(max_n) +
                          ". The dense RFT needs O(N^2) memory and time, so very long sequences "
                          "such as whole genomes are out of reach; raise --max-n deliberately "
                          "if the machine can hold an N x N matrix");
    }
  }
}

std::vector<seq::DnaRecord> read_records(const std::string& path) {
  auto records = seq::read_fasta_file(path);
  if (records.empty()) throw ParseError("no FASTA records in " + path, 1);
  return records;
}

std::string safe_file_stem(const std::string& id) {
  std::string out = id;
  for (auto& c : out) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-')) c = '_';
  }
  return out;
}

int cmd_spectrum(const Options& o, std::ostream& out, std::ostream& err) {
  const auto method = metric::parse_method(o.method);
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format != "csv" && format != "json") throw UsageError("spectrum --format must be csv or json");
  const auto records = read_records(o.input);
  check_cap(records, o.max_n);
  if (records.size() > 1 && o.out.empty()) {
    throw UsageError("several records need --out <directory>");
  }

  transform::BasisCache cache(o.max_n);
  Output output(out);
  const io::SpectrumView view{o.skip_first_term};
  for (const auto& rec : records) {
    const auto ind = seq::to_indicators(rec);
    std::array<transform::Spectrum, 4> spectra;
    transform::PowerSpectrum ps;
    if (method == metric::Method::rft) {
      spectra = transform::rft_spectra(ind, *cache.get(rec.length()));
      ps = transform::rft_power_spectrum(spectra);
    } else {
      spectra = transform::dft_spectra(ind);
      ps = transform::dft_power_spectrum(spectra);
    }

    std::string content;
    if (format == "csv") {
      content = o.per_nucleotide ? io::spectra_csv(spectra) : io::power_spectrum_csv(ps, view);
    } else {
      auto j = o.per_nucleotide ? io::spectra_json(spectra) : io::power_spectrum_json(ps, view);
      j["id"] = rec.id;
      j["ambiguous_symbols"] = ind.ambiguous_count();
      content = j.dump(1) + "\n";
    }
    if (o.out.empty()) {
      output.add_stdout(content);
    } else {
      output.add(fs::path(o.out) / (safe_file_stem(rec.id) + "." + o.method + "." + format), content);
    }
    if (o.peaks > 0) {
      std::string line = rec.id + "\t" + o.method;
      for (auto p : transform::peak_indices(ps, o.peaks, true)) line += "\t" + std::to_string(p);
      err << line << "\n";
    }
  }
  output.commit();
  return kSuccess;
}

int cmd_distmat(const Options& o, std::ostream& out) {
  const auto method = metric::parse_method(o.method);
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format != "csv" && format != "phylip") throw UsageError("distmat --format must be csv or phylip");
  const auto records = read_records(o.input);
  check_cap(records, o.max_n);
  transform::BasisCache cache(o.max_n);
  const auto matrix = metric::pairwise_distances(records, method, cache);
  const auto text = format == "csv" ? io::distance_matrix_csv(matrix) : io::distance_matrix_phylip(matrix);
  Output output(out);
  if (o.out.empty()) output.add_stdout(text); else output.add(o.out, text);
  output.commit();
  return kSuccess;
}

metric::DistanceMatrix matrix_from_input(const Options& o) {
  std::string text;
  if (o.input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(o.input);
    if (!in) throw Error("cannot open " + o.input);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty input", 1);
  const auto method = metric::parse_method(o.method);
  if (text[first] == '>') {
    auto records = seq::parse_fasta(std::string_view(text));
    check_cap(records, o.max_n);
    transform::BasisCache cache(o.max_n);
    return metric::pairwise_distances(records, method, cache);
  }
  return io::parse_distance_matrix(text, method);
}

int cmd_tree(const Options& o, std::ostream& out) {
  const std::string format = o.format.empty() ? "newick" : o.format;
  if (format != "newick" && format != "json") throw UsageError("tree --format must be newick or json");
  const auto tree = phylo::upgma(matrix_from_input(o));
  const std::string text =
      format == "newick" ? phylo::to_newick(tree, o.decimals) + "\n" : io::dendrogram_json(tree).dump(1) + "\n";
  Output output(out);
  if (o.out.empty()) output.add_stdout(text); else output.add(o.out, text);
  output.commit();
  return kSuccess;
}

seq::DnaRecord experiment_base(const Options& o, std::string_view accession, bool intron,
                               std::ostream& err) {
  if (!o.input.empty() && o.input != "-") return read_records(o.input).front();
  if (auto rec = fixtures::load_cached(accession)) return *rec;
  if (!o.surrogate) {
    throw Error("fixture " + std::string(accession) + " is not in " + fixtures::cache_dir().string() +
                "; run `rftdist fetch --panel all`, pass --input, or use --surrogate");
  }
  err << "using seeded surrogate for " << accession << "\n";
  return intron ? fixtures::intron_surrogate() : fixtures::exon_surrogate();
}

int cmd_experiment(const Options& o, std::ostream& out, std::ostream& err) {
  transform::BasisCache cache(o.max_n);
  labkit::ExperimentReport report;
  if (o.kind == "point" || o.kind == "deletion") {
    const auto kind = labkit::parse_mutation_kind(o.kind);
    const auto base = experiment_base(o, fixtures::kIntronAccession, true, err);
    check_cap({base}, o.max_n);
    const auto steps = o.steps.empty()
                           ? (kind == labkit::MutationKind::point ? labkit::default_point_steps()
                                                                  : labkit::default_deletion_steps())
                           : parse_size_list(o.steps);
    report = labkit::run_mutation_series(base, kind, steps, o.seed, cache);
  } else if (o.kind == "clades") {
    const auto base = experiment_base(o, fixtures::kIntronAccession, true, err);
    check_cap({base}, o.max_n);
    report = labkit::run_clades(base, o.rate, o.seed, cache);
  } else if (o.kind == "triangle") {
    report = labkit::run_triangle(o.count, 80, 400, o.seed, cache);
  } else if (o.kind == "synth") {
    report = labkit::run_synth(100, o.seed, o.noise, cache);
  } else {
    throw UsageError("unknown experiment '" + o.kind + "'");
  }

  Output output(out);
  const std::string json = io::report_json(report).dump(1) + "\n";
  if (o.out.empty()) {
    output.add_stdout(json);
  } else {
    output.add(o.out + ".json", json);
    output.add(o.out + ".csv", io::report_csv(report));
  }
  output.commit();
  err << report.experiment << ": " << report.predicate << " -> "
      << (report.predicate_passed ? "pass" : "FAIL") << "\n";
  return report.predicate_passed ? kSuccess : kAcceptanceFailure;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ns = parse_size_list(o.n_list);
  for (auto n : ns) {
    if (n > o.max_n) throw ResourceError("benchmark length " + std::to_string(n) + " exceeds --max-n");
  }
  nlohmann::json runs = nlohmann::json::array();
  std::vector<double> xs;
  std::vector<double> ts;
  for (auto n : ns) {
    const auto t = labkit::benchmark_transforms(n, o.rounds, o.seed);
    runs.push_back(io::timing_json(t));
    xs.push_back(static_cast<double>(n));
    ts.push_back(t.rft_seconds);
    err << "n=" << n << " rft=" << t.rft_seconds << "s dft=" << t.dft_seconds << "s\n";
  }
  nlohmann::json report = {{"rounds", o.rounds},
                           {"seed", o.seed},
                           {"host", o.host},
                           {"workers", 1},
                           {"runs", runs}};
  report["rft_exponent"] = xs.size() >= 2 ? nlohmann::json(labkit::fit_loglog_exponent(xs, ts))
                                          : nlohmann::json(nullptr);
  Output output(out);
  const std::string text = report.dump(1) + "\n";
  if (o.out.empty()) output.add_stdout(text); else output.add(o.out, text);
  output.commit();
  return kSuccess;
}

int cmd_fetch(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> ids = o.ids;
  if (o.panel == "influenza" || o.panel == "all") {
    for (const auto& e : fixtures::kInfluenzaPanel) ids.emplace_back(e.accession);
  }
  if (o.panel == "fixtures" || o.panel == "all") {
    ids.emplace_back(fixtures::kExonAccession);
    ids.emplace_back(fixtures::kIntronAccession);
  }
  if (!o.panel.empty() && o.panel != "influenza" && o.panel != "fixtures" && o.panel != "all") {
    throw UsageError("unknown panel '" + o.panel + "'");
  }
  const fs::path cache_dir = o.cache_dir.empty() ? fixtures::cache_dir() : fs::path(o.cache_dir);
  seq::FetchOptions options;
  options.endpoint = o.endpoint.empty() ? seq::resolve_endpoint() : o.endpoint;
  options.timeout = std::chrono::seconds(o.timeout);
  options.allow_network = !o.offline;
  const auto records = seq::fetch_accessions(ids, cache_dir, options);
  err << records.size() << " record(s) available in " << cache_dir.string() << "\n";
  Output output(out);
  if (!o.out.empty()) {
    output.add(o.out, seq::to_fasta(records));
  } else {
    output.add_stdout(seq::to_fasta(records));
  }
  output.commit();
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Ramanujan-Fourier transform distances and trees for DNA sequences", "rftdist"};
  app.require_subcommand(1);

  auto add_method = [&](CLI::App* cmd) {
    cmd->add_option("--method", o.method, "Transform: rft or dft")->check(CLI::IsMember({"rft", "dft"}));
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "Output path");
    cmd->add_option("--max-n", o.max_n, "Largest sequence length accepted")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Random seed (recorded in outputs)");
  };

  auto* spectrum = app.add_subcommand("spectrum", "Power spectrum of every record in a FASTA file");
  spectrum->add_option("input", o.input, "FASTA file, - for stdin")->required();
  add_method(spectrum);
  add_common(spectrum);
  spectrum->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  spectrum->add_flag("--skip-first-term", o.skip_first_term,
                     "Plot data: drop q=1 (RFT) or keep only k in [1, N/2] (DFT)");
  spectrum->add_flag("--per-nucleotide", o.per_nucleotide, "Write the four A/T/C/G spectra instead");
  spectrum->add_option("--peaks", o.peaks, "Report this many peak indices per record on stderr");

  auto* distmat = app.add_subcommand("distmat", "Pairwise distance matrix");
  distmat->add_option("input", o.input, "FASTA file, - for stdin")->required();
  add_method(distmat);
  add_common(distmat);
  distmat->add_option("--format", o.format, "csv or phylip")->check(CLI::IsMember({"csv", "phylip"}));

  auto* tree = app.add_subcommand("tree", "UPGMA tree from sequences or a distance matrix");
  tree->add_option("input", o.input, "FASTA, CSV or PHYLIP matrix; - for stdin")->required();
  add_method(tree);
  add_common(tree);
  tree->add_option("--format", o.format, "newick or json")->check(CLI::IsMember({"newick", "json"}));
  tree->add_option("--decimals", o.decimals, "Branch-length decimals")->check(CLI::Range(0, 17));

  auto* experiment = app.add_subcommand("experiment", "Run a seeded experiment");
  experiment->add_option("kind", o.kind, "point, deletion, clades, triangle or synth")
      ->required()
      ->check(CLI::IsMember({"point", "deletion", "clades", "triangle", "synth"}));
  experiment->add_option("--out", o.out, "Report prefix; writes <prefix>.json and <prefix>.csv");
  experiment->add_option("--seed", o.seed, "Random seed");
  experiment->add_option("--max-n", o.max_n, "Largest sequence length accepted")->check(CLI::PositiveNumber);
  experiment->add_option("--input", o.input, "FASTA whose first record replaces the fixture");
  experiment->add_flag("--surrogate", o.surrogate, "Use a seeded stand-in when the fixture is missing");
  experiment->add_option("--steps", o.steps, "Comma-separated mutation counts or deletion lengths");
  experiment->add_option("--rate", o.rate, "Clade mutation rate")->check(CLI::Range(0.0, 1.0));
  experiment->add_option("--noise", o.noise, "Noise sigma for synth")->check(CLI::NonNegativeNumber);
  experiment->add_option("--count", o.count, "Sequences in the triangle audit")->check(CLI::Range(3, 100000));
  o.input.clear();

  auto* bench = app.add_subcommand("bench", "Time forward RFT against DFT");
  bench->add_option("--n", o.n_list, "Comma-separated lengths");
  bench->add_option("--rounds", o.rounds, "Transforms per length")->check(CLI::PositiveNumber);
  bench->add_option("--host", o.host, "Free-text host description stored in the report");
  add_common(bench);

  auto* fetch = app.add_subcommand("fetch", "Populate the accession cache");
  fetch->add_option("ids", o.ids, "Accessions");
  fetch->add_option("--panel", o.panel, "influenza, fixtures or all");
  fetch->add_option("--cache-dir", o.cache_dir, "Cache directory (default $RFTDIST_CACHE_DIR or data/cache)");
  fetch->add_option("--endpoint", o.endpoint, "efetch-compatible endpoint URL");
  fetch->add_option("--timeout", o.timeout, "Seconds")->check(CLI::PositiveNumber);
  fetch->add_flag("--offline", o.offline, "Only read the cache");
  fetch->add_option("--out", o.out, "Write the records as one FASTA file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*spectrum) return cmd_spectrum(o, out, err);
    if (*distmat) return cmd_distmat(o, out);
    if (*tree) return cmd_tree(o, out);
    if (*experiment) return cmd_experiment(o, out, err);
    if (*bench) return cmd_bench(o, out, err);
    if (*fetch) return cmd_fetch(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}

}  // namespace rftdist::cli
