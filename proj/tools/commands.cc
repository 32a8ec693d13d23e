// Copyright 2026 The dpbins Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>
#include <type_traits>
#include <utility>

#include <json.hpp>

#include "dpbins/adaptive_binning.h"
#include "dpbins/bounds.h"
#include "dpbins/csv_io.h"
#include "dpbins/datagen.h"
#include "dpbins/kernels.h"
#include "dpbins/release.h"
#include "json_config.h"

namespace dpbins::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr char kAuto[] = "auto";

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw DataError("write failed: " + path);
}

void Require(bool present, const std::string& flag) {
  if (!present) throw UsageError("--" + flag + " is required");
}

double ParseNumberOrAuto(const std::string& text, double automatic,
                         const std::string& flag) {
  if (text == kAuto) return automatic;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("--" + flag + " expects a number or 'auto', got '" +
                     text + "'");
  }
  return value;
}

Json CellCountJson(const CellCount& count) {
  if (count.exact) return *count.exact;
  return Json{{"log2", count.log2_value}};
}

Json LedgerJson(const PrivacyLedger& ledger) {
  Json entries = Json::array();
  for (const LedgerEntry& e : ledger.entries()) {
    entries.push_back({{"label", e.label},
                       {"sensitivity", e.sensitivity},
                       {"scale", e.scale},
                       {"queries", e.queries},
                       {"epsilon", e.epsilon()}});
  }
  return Json{{"entries", entries}, {"total_epsilon", ledger.total_epsilon()}};
}

Json StatsJson(const ReleaseStats& s) {
  Json j{{"mode", s.mode},
         {"total_bins", CellCountJson(s.total_bins)},
         {"nonempty_bins", s.nonempty_bins},
         {"empty_bins", CellCountJson(s.empty_bins)},
         {"nonempty_survivors", s.nonempty_survivors},
         {"empty_survivors", s.empty_survivors},
         {"heavy_bins", s.heavy_light.heavy_bins},
         {"light_points", s.heavy_light.light_points},
         {"threshold", s.threshold}};
  if (s.h) j["h"] = *s.h;
  if (s.h_prime) j["h_prime"] = *s.h_prime;
  if (s.tau) j["tau"] = *s.tau;
  j["empty_node_split"] = s.empty_node_split;
  return j;
}

Json ManifestHeader(const Command& command, std::uint64_t seed) {
  return Json{{"tool", "dpbins"},
              {"version", DPBINS_VERSION},
              {"command", command.path()},
              {"seed", seed},
              {"config", Json::parse(EchoConfig(*command.app()).dump())}};
}

void WriteManifest(const std::string& path, const Json& manifest) {
  WriteText(path, manifest.dump(2) + "\n");
}

// An empty release is not a probability measure, so its distances are NaN
// and sweeps report it separately.
double ReleaseMmd(MmdReference& reference, const WeightedDataset& synthetic) {
  if (synthetic.empty()) return std::nan("");
  return reference.mmd(synthetic);
}

// max |KD_P - KD_Q| over the synthetic centers plus `extra` Halton points in
// the data's bounding box.
double ReleaseKdSup(const Dataset& data, const WeightedDataset& synthetic,
                    std::size_t extra, const KernelParams& params) {
  if (synthetic.empty()) return std::nan("");
  std::vector<double> coords(synthetic.coords().begin(),
                             synthetic.coords().end());
  if (extra > 0) {
    const Dataset halton = halton_points(bounding_box(data), extra);
    coords.insert(coords.end(), halton.coords().begin(), halton.coords().end());
  }
  const Dataset net(data.dim(), std::move(coords));
  const auto kp = kde_values(net, WeightedDataset::FromDataset(data), params);
  const auto kq = kde_values(net, synthetic, params);
  double sup = 0.0;
  for (std::size_t i = 0; i < kp.size(); ++i) {
    sup = std::max(sup, std::abs(kp[i] - kq[i]));
  }
  return sup;
}

double SampleStdDev(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

Dataset ScaledStandardGaussian(std::size_t dim, std::size_t n, double sigma,
                               Rng& rng) {
  const Dataset standard = sample_standard_gaussian(dim, n, rng);
  std::vector<double> coords(standard.coords().begin(), standard.coords().end());
  for (double& v : coords) v *= sigma;
  return Dataset(dim, std::move(coords));
}

// Default values rendered exactly, so a config echo reruns bit-identically.
std::string Exact(double v) { return FormatDouble(v); }
std::string Exact(const std::string& v) { return v; }
template <typename Int>
  requires std::is_integral_v<Int>
std::string Exact(Int v) {
  return std::to_string(v);
}
template <typename T>
std::string Exact(const std::vector<T>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += Exact(values[i]);
  }
  return out + "]";
}

std::string Cell(double v) { return FormatDouble(v); }
std::string Cell(std::uint64_t v) { return std::to_string(v); }

// Parameters shared by every synthesis entry point.
struct SynthesisOptions {
  double width = 1.0;
  std::string threshold = kAuto;
  double delta = 0.05;
  double s1 = 8.0;
  double s2 = 1.0;
  std::string tau = kAuto;

  void Register(CLI::App* app) {
    app->add_option("--width", width, "Grid bin width w")->default_str(Exact(width));
    app->add_option("--threshold", threshold,
                    "Filtering threshold t, or 'auto' for (8/eps) ln(1/delta)")
        ->default_str(Exact(threshold));
    app->add_option("--delta", delta, "Failure probability for auto values")
        ->default_str(Exact(delta));
    app->add_option("--s1", s1, "Tree: largest leaf edge")->default_str(Exact(s1));
    app->add_option("--s2", s2, "Tree: smallest edge a split may produce")
        ->default_str(Exact(s2));
    app->add_option("--tau", tau,
                    "Tree: split threshold, or 'auto' for the empty-split floor")
        ->default_str(Exact(tau));
  }

  double Threshold(double release_epsilon) const {
    const double automatic = threshold == kAuto
                                 ? threshold_from_delta(release_epsilon, delta)
                                 : 0.0;
    return ParseNumberOrAuto(threshold, automatic, "threshold");
  }

  // The auto tau uses the root edge that the tree will use.
  double Tau(const Dataset& data, double epsilon_prime,
             const std::optional<BoundingBox>& box) const {
    if (tau != kAuto) return ParseNumberOrAuto(tau, 0.0, "tau");
    TreeConfig probe{epsilon_prime, 0.0, s1, s2};
    probe.Validate();
    const double edge = box ? box->edge : bounding_box(data).edge;
    const TreeShape shape = tree_shape(edge, data.dim(), probe);
    if (shape.h_prime == shape.h) return 0.0;
    return tau_floor(shape.h, shape.h_prime, data.size(), epsilon_prime, delta);
  }

  SynthesisResult Run(const std::string& method, const Dataset& data,
                      double epsilon, double epsilon_prime, const Rng& rng,
                      const std::optional<BoundingBox>& box) const {
    if (method == "grid") {
      const GridConfig config{width, epsilon, Threshold(epsilon)};
      return synthesize_data_independent(data, config, rng, box);
    }
    if (!(epsilon_prime > 0.0 && epsilon_prime < epsilon)) {
      throw UsageError("tree mode needs 0 < eps-split < epsilon");
    }
    const double epsilon_release = epsilon - epsilon_prime;
    const TreeConfig config{epsilon_prime, Tau(data, epsilon_prime, box), s1,
                            s2};
    const PrivacySpec spec{epsilon_prime, epsilon_release,
                           Threshold(epsilon_release)};
    return synthesize_data_dependent(data, config, spec, rng, box);
  }
};

// ---------------------------------------------------------------- generate

class GenerateCommand : public Command {
 public:
  explicit GenerateCommand(CLI::App& parent)
      : Command(parent.add_subcommand(
            "generate", "Release a private synthetic weighted dataset")) {
    app_->add_option("--input", input_, "Input CSV, one point per row");
    app_->add_option("--out", out_, "Synthetic weighted CSV to write");
    app_->add_option("--manifest", manifest_,
                     "Manifest path (default: <out>.manifest.json)");
    app_->add_option("--mode", mode_, "grid or tree")
        ->check(CLI::IsMember({"grid", "tree"}))
        ->default_str(Exact(mode_));
    app_->add_option("--epsilon", epsilon_, "Total privacy budget")
        ->default_str(Exact(epsilon_));
    app_->add_option("--eps-split", eps_split_,
                     "Tree: budget eps' spent on splits (default epsilon/2)");
    app_->add_option("--box-center", box_center_,
                     "Public bounding cube center (default: data midrange)");
    app_->add_option("--box-edge", box_edge_, "Public bounding cube edge");
    app_->add_option("--layout-out", layout_out_,
                     "Tree: write the partition layout JSON here");
    options_.Register(app_);
  }

 protected:
  void Run() override {
    Require(!input_.empty(), "input");
    Require(!out_.empty(), "out");
    const Dataset data = ReadDatasetCsvFile(input_);
    std::optional<BoundingBox> box;
    if (!box_center_.empty() || box_edge_) {
      if (box_center_.size() != data.dim() || !box_edge_) {
        throw UsageError("--box-center needs one value per column and "
                         "--box-edge must be set");
      }
      box = BoundingBox{box_center_, *box_edge_, false};
    }
    const double eps_prime = eps_split_.value_or(epsilon_ / 2);
    const SynthesisResult result =
        options_.Run(mode_, data, epsilon_, eps_prime, Rng(seed_), box);

    std::ostringstream csv;
    WriteWeightedCsv(csv, result.synthetic);
    WriteText(out_, csv.str());
    if (!layout_out_.empty() && result.layout) {
      WriteText(layout_out_, SerializeLayout(*result.layout) + "\n");
    }

    Json manifest = ManifestHeader(*this, seed_);
    manifest["input"] = {{"path", input_},
                         {"rows", data.size()},
                         {"dim", data.dim()}};
    Json budget{{"epsilon", epsilon_}};
    if (mode_ == "tree") {
      budget["epsilon_partition"] = eps_prime;
      budget["epsilon_release"] = epsilon_ - eps_prime;
    }
    manifest["budget"] = budget;
    // A data-derived box leaks the data extent; only a public box is private.
    const BoundingBox used = box ? *box : bounding_box(data);
    manifest["box"] = {{"source", box ? "public" : "data"},
                       {"center", used.center},
                       {"edge", used.edge}};
    manifest["ledger"] = LedgerJson(result.ledger);
    manifest["stats"] = StatsJson(result.stats);
    manifest["outputs"] = {{"synthetic", out_},
                           {"synthetic_rows", result.synthetic.size()},
                           {"synthetic_total_weight",
                            result.synthetic.empty()
                                ? 0.0
                                : result.synthetic.total_weight()}};
    WriteManifest(manifest_.empty() ? out_ + ".manifest.json" : manifest_,
                  manifest);
  }

 private:
  std::string input_;
  std::string out_;
  std::string manifest_;
  std::string mode_ = "grid";
  double epsilon_ = 1.0;
  std::optional<double> eps_split_;
  std::vector<double> box_center_;
  std::optional<double> box_edge_;
  std::string layout_out_;
  SynthesisOptions options_;
};

// ---------------------------------------------------------------- tradeoff

class TradeoffCommand : public Command {
 public:
  explicit TradeoffCommand(CLI::App& parent)
      : Command(parent.add_subcommand(
            "tradeoff", "Mean MMD of private releases across budgets")) {
    app_->add_option("--input", input_,
                     "Input CSV (default: sample the benchmark mixture)");
    app_->add_option("--dim", dim_, "Mixture dimension")->default_str(Exact(dim_));
    app_->add_option("--n", n_, "Mixture sample size")->default_str(Exact(n_));
    app_->add_option("--components", components_, "Mixture components")
        ->default_str(Exact(components_));
    app_->add_option("--component-sigma", component_sigma_,
                     "Per-component standard deviation")
        ->default_str(Exact(component_sigma_));
    AddList("--epsilons", epsilons_, "Total budgets to sweep");
    app_->add_option("--methods", methods_, "Any of grid, tree")
        ->check(CLI::IsMember({"grid", "tree"}))
        ->default_str(Exact(methods_));
    app_->add_option("--repetitions", repetitions_, "Releases per budget")
        ->check(CLI::PositiveNumber)
        ->default_str(Exact(repetitions_));
    app_->add_option("--eps-split-fraction", split_fraction_,
                     "Tree: share of each budget spent on splits")
        ->default_str(Exact(split_fraction_));
    app_->add_option("--bandwidth", bandwidth_, "Kernel bandwidth")
        ->default_str(Exact(bandwidth_));
    app_->add_option("--out", out_, "Aggregate CSV to write");
    app_->add_option("--runs-out", runs_out_, "Optional per-run CSV");
    app_->add_option("--manifest", manifest_,
                     "Manifest path (default: <out>.manifest.json)");
    options_.Register(app_);
  }

 protected:
  void Run() override {
    Require(!out_.empty(), "out");
    if (repetitions_ < 1) throw UsageError("--repetitions must be >= 1");
    const Dataset data = LoadOrSample();
    const KernelParams params(bandwidth_);
    MmdReference reference(WeightedDataset::FromDataset(data), params);

    struct RunRow {
      double epsilon;
      std::uint64_t seed;
      std::string method;
      double mmd;
      std::size_t released;
    };
    std::vector<RunRow> runs;
    for (const std::string& method : methods_) {
      for (double eps : epsilons_) {
        for (int rep = 0; rep < repetitions_; ++rep) {
          const Rng rng = Rng(seed_).Fork("run").Fork(static_cast<std::uint64_t>(rep));
          const SynthesisResult r = options_.Run(
              method, data, eps, split_fraction_ * eps, rng, std::nullopt);
          runs.push_back({eps, rng.seed(), method,
                          ReleaseMmd(reference, r.synthetic),
                          r.synthetic.size()});
        }
      }
    }
    std::sort(runs.begin(), runs.end(), [](const RunRow& a, const RunRow& b) {
      return std::tie(a.epsilon, a.seed, a.method) <
             std::tie(b.epsilon, b.seed, b.method);
    });

    const std::uint64_t n = data.size();
    std::string runs_csv =
        CsvRow({"epsilon", "n", "seed", "method", "mmd", "released_bins"});
    for (const RunRow& r : runs) {
      runs_csv += CsvRow({Cell(r.epsilon), Cell(n), Cell(r.seed), r.method,
                          Cell(r.mmd), Cell(std::uint64_t{r.released})});
    }

    std::vector<std::pair<double, std::string>> keys;
    for (const RunRow& r : runs) keys.emplace_back(r.epsilon, r.method);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    // Empty releases are counted, not averaged.
    std::string csv = CsvRow({"epsilon", "mean_mmd", "std_mmd", "n", "method",
                              "repetitions", "empty_releases"});
    for (const auto& [eps, method] : keys) {
      std::vector<double> values;
      std::uint64_t total = 0;
      for (const RunRow& r : runs) {
        if (r.epsilon != eps || r.method != method) continue;
        ++total;
        if (!std::isnan(r.mmd)) values.push_back(r.mmd);
      }
      double mean = std::nan("");
      double std_dev = std::nan("");
      if (!values.empty()) {
        mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        std_dev = SampleStdDev(values, mean);
      }
      csv += CsvRow({Cell(eps), Cell(mean), Cell(std_dev), Cell(n), method,
                     Cell(total), Cell(total - values.size())});
    }
    WriteText(out_, csv);
    if (!runs_out_.empty()) WriteText(runs_out_, runs_csv);

    Json manifest = ManifestHeader(*this, seed_);
    manifest["data"] = {{"source", input_.empty() ? "benchmark_mixture" : input_},
                        {"rows", n},
                        {"dim", data.dim()}};
    manifest["outputs"] = {{"aggregate", out_}, {"runs", runs_out_}};
    WriteManifest(manifest_.empty() ? out_ + ".manifest.json" : manifest_,
                  manifest);
  }

 private:
  Dataset LoadOrSample() const {
    if (!input_.empty()) return ReadDatasetCsvFile(input_);
    Rng data_rng = Rng(seed_).Fork("data");
    const GaussianMixtureSpec spec =
        benchmark_mixture_spec(dim_, data_rng, component_sigma_, components_);
    return sample_gaussian_mixture(spec, n_, data_rng);
  }

  std::string input_;
  std::size_t dim_ = 2;
  std::size_t n_ = 10000;
  std::size_t components_ = 10;
  double component_sigma_ = 30.0;
  std::vector<double> epsilons_{0.1, 0.3, 1.0, 3.0, 10.0};
  std::vector<std::string> methods_{"grid", "tree"};
  int repetitions_ = 10;
  double split_fraction_ = 0.5;
  double bandwidth_ = 1.0;
  std::string out_;
  std::string runs_out_;
  std::string manifest_;
  SynthesisOptions options_;
};

// ----------------------------------------------------------------- scaling

class ScalingCommand : public Command {
 public:
  explicit ScalingCommand(CLI::App& parent)
      : Command(parent.add_subcommand(
            "scaling",
            "Grid release error on Gaussian data next to the Gaussian bound")) {
    app_->add_option("--dim", dim_, "Dimension")->default_str(Exact(dim_));
    app_->add_option("--sigma", sigma_, "Data standard deviation")
        ->default_str(Exact(sigma_));
    AddList("--ns", ns_, "Sample sizes to sweep");
    AddList("--epsilons", epsilons_, "Budgets to sweep");
    app_->add_option("--repetitions", repetitions_, "Releases per (eps, n)")
        ->check(CLI::PositiveNumber)
        ->default_str(Exact(repetitions_));
    app_->add_option("--width", width_, "Grid bin width w")->default_str(Exact(width_));
    app_->add_option("--threshold", threshold_,
                     "Filtering threshold t, or 'auto'")
        ->default_str(Exact(threshold_));
    app_->add_option("--delta", delta_, "Failure probability")
        ->default_str(Exact(delta_));
    app_->add_option("--bandwidth", bandwidth_, "Kernel bandwidth")
        ->default_str(Exact(bandwidth_));
    app_->add_option("--eval-points", eval_points_,
                     "Halton points added to the KD sup net")
        ->default_str(Exact(eval_points_));
    app_->add_option("--out", out_, "CSV to write");
    app_->add_option("--manifest", manifest_,
                     "Manifest path (default: <out>.manifest.json)");
  }

 protected:
  void Run() override {
    Require(!out_.empty(), "out");
    if (!(sigma_ > 0.0)) throw UsageError("--sigma must be positive");
    const KernelParams params(bandwidth_);
    struct Row {
      double epsilon;
      std::uint64_t n;
      std::uint64_t seed;
      double mmd;
      double kd_sup;
      std::optional<double> bound;
    };
    std::vector<Row> rows;
    for (std::size_t n : ns_) {
      Rng data_rng = Rng(seed_).Fork("data").Fork(std::uint64_t{n});
      const Dataset data = ScaledStandardGaussian(dim_, n, sigma_, data_rng);
      MmdReference reference(WeightedDataset::FromDataset(data), params);
      for (double eps : epsilons_) {
        const double t = ParseNumberOrAuto(
            threshold_,
            threshold_ == kAuto ? threshold_from_delta(eps, delta_) : 0.0,
            "threshold");
        const BoundReport bound =
            gaussian_bound(static_cast<double>(n), dim_, sigma_, width_, eps,
                           delta_);
        for (int rep = 0; rep < repetitions_; ++rep) {
          const Rng rng = Rng(seed_).Fork("run").Fork(static_cast<std::uint64_t>(rep));
          const SynthesisResult r =
              synthesize_data_independent(data, {width_, eps, t}, rng);
          rows.push_back({eps, n, rng.seed(), ReleaseMmd(reference, r.synthetic),
                          ReleaseKdSup(data, r.synthetic, eval_points_, params),
                          bound.value});
        }
      }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      return std::tie(a.epsilon, a.n, a.seed) < std::tie(b.epsilon, b.n, b.seed);
    });
    std::string csv = CsvRow({"epsilon", "n", "seed", "empirical_mmd",
                              "empirical_kd_sup", "theory_bound",
                              "preconditions_met"});
    for (const Row& r : rows) {
      csv += CsvRow({Cell(r.epsilon), Cell(r.n), Cell(r.seed), Cell(r.mmd),
                     Cell(r.kd_sup), r.bound ? Cell(*r.bound) : "",
                     r.bound ? "true" : "false"});
    }
    WriteText(out_, csv);
    Json manifest = ManifestHeader(*this, seed_);
    manifest["outputs"] = {{"rows", out_}};
    WriteManifest(manifest_.empty() ? out_ + ".manifest.json" : manifest_,
                  manifest);
  }

 private:
  std::size_t dim_ = 2;
  double sigma_ = 1.0;
  std::vector<std::size_t> ns_{10000};
  std::vector<double> epsilons_{0.1, 1.0, 10.0, 100.0};
  int repetitions_ = 5;
  double width_ = 1.0;
  std::string threshold_ = kAuto;
  double delta_ = 0.05;
  double bandwidth_ = 1.0;
  std::size_t eval_points_ = 1000;
  std::string out_;
  std::string manifest_;
};

// --------------------------------------------------------- uniform-mixture

class UniformMixtureCommand : public Command {
 public:
  explicit UniformMixtureCommand(CLI::App& parent)
      : Command(parent.add_subcommand(
            "uniform-mixture",
            "KL and MMD of a 2k+1 box mixture against N(0, 1) across widths")) {
    app_->add_option("--k", k_, "Boxes on each side of the central one")
        ->check(CLI::NonNegativeNumber)
        ->default_str(Exact(k_));
    AddList("--cs", cs_, "Box half-widths c to sweep");
    app_->add_option("--sample-n", sample_n_, "Size of the N(0, 1) sample")
        ->default_str(Exact(sample_n_));
    app_->add_option("--bandwidth", bandwidth_, "Kernel bandwidth gamma")
        ->default_str(Exact(bandwidth_));
    app_->add_option("--out", out_, "CSV to write");
    app_->add_option("--manifest", manifest_,
                     "Manifest path (default: <out>.manifest.json)");
  }

 protected:
  void Run() override {
    Require(!out_.empty(), "out");
    if (sample_n_ < 2) throw UsageError("--sample-n must be >= 2");
    const KernelParams params(bandwidth_);
    Rng rng = Rng(seed_).Fork("sample");
    MmdReference reference(
        WeightedDataset::FromDataset(sample_standard_gaussian(1, sample_n_, rng)),
        params);
    std::vector<double> cs = cs_;
    std::sort(cs.begin(), cs.end());
    std::string csv = CsvRow({"c", "kl", "closed_form_mmd", "sample_mmd"});
    for (double c : cs) {
      const UniformMixtureSpec spec = optimal_uniform_weights(k_, c);
      const WeightedDataset q = uniform_mixture_as_weighted_dataset(spec);
      const double closed = std::sqrt(
          std::max(0.0, mmd_squared_weighted_vs_standard_gaussian(q, params)));
      csv += CsvRow({Cell(c), Cell(kl_uniform_mixture_vs_gaussian(spec)),
                     Cell(closed), Cell(reference.mmd(q))});
    }
    WriteText(out_, csv);
    Json manifest = ManifestHeader(*this, seed_);
    manifest["outputs"] = {{"rows", out_}};
    WriteManifest(manifest_.empty() ? out_ + ".manifest.json" : manifest_,
                  manifest);
  }

 private:
  int k_ = 5;
  std::vector<double> cs_{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4,
                          0.5,  0.6, 0.8,  1.0, 1.5,  2.0};
  std::size_t sample_n_ = 100000;
  double bandwidth_ = 1.0;
  std::string out_;
  std::string manifest_;
};

// ------------------------------------------------------------------ bounds

std::string InputHelp(const std::string& input) {
  static const std::map<std::string, std::string> kHelp = {
      {"R", "Edge of the data bounding cube"},
      {"w", "Bin width"},
      {"d", "Dimension"},
      {"n", "Number of data points"},
      {"m", "Points in light bins"},
      {"M", "Number of heavy bins"},
      {"epsilon", "Privacy budget"},
      {"delta", "Failure probability"},
      {"sigma", "Standard deviation of the Gaussian data"},
      {"h", "Depth above which every node splits"},
      {"hprime", "Maximum tree depth"},
      {"value", "Distance to convert"}};
  const auto it = kHelp.find(input);
  return it == kHelp.end() ? std::string() : it->second;
}

// Bound subcommands print one JSON report to stdout.
class BoundCommand : public Command {
 public:
  using Evaluate = std::function<BoundReport(const BoundCommand&)>;

  BoundCommand(CLI::App& bounds, const std::string& name,
               const std::string& description,
               const std::vector<std::string>& inputs, Evaluate evaluate)
      : Command(bounds.add_subcommand(name, description)),
        evaluate_(std::move(evaluate)) {
    // Frees -h for the tree depth option.
    app_->set_help_flag("--help", "Print this help message and exit");
    for (const std::string& input : inputs) {
      values_[input] = std::nullopt;
    }
    for (auto& [input, slot] : values_) {
      std::string flags = "--" + input;
      if (input == "epsilon") flags += ",--eps";
      app_->add_option(flags, slot, InputHelp(input));
    }
  }

  double Get(const std::string& name) const {
    const auto& slot = values_.at(name);
    if (!slot) throw UsageError("--" + name + " is required");
    return *slot;
  }
  std::size_t GetCount(const std::string& name) const {
    const double v = Get(name);
    if (!(v >= 0.0) || v != std::floor(v)) {
      throw UsageError("--" + name + " must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
  }

 protected:
  void Run() override { std::cout << BoundReportJson(evaluate_(*this)); }

 private:
  Evaluate evaluate_;
  std::map<std::string, std::optional<double>> values_;
};

BoundReport ScalarReport(const std::string& name,
                         std::vector<std::pair<std::string, double>> inputs,
                         double value) {
  BoundReport r;
  r.name = name;
  r.inputs = std::move(inputs);
  r.value = value;
  r.preconditions_met = true;
  return r;
}

void RegisterBounds(CLI::App& app,
                    std::vector<std::unique_ptr<Command>>& commands) {
  CLI::App* bounds =
      app.add_subcommand("bounds", "Evaluate a utility or privacy bound");
  bounds->require_subcommand(1);
  auto add = [&](const std::string& name, const std::string& description,
                 const std::vector<std::string>& inputs,
                 BoundCommand::Evaluate evaluate) {
    commands.push_back(std::make_unique<BoundCommand>(
        *bounds, name, description, inputs, std::move(evaluate)));
  };
  add("worst-case", "Worst-case KD error of the grid release",
      {"R", "w", "d", "n", "epsilon", "delta"}, [](const BoundCommand& c) {
        return worst_case_bound(c.Get("R"), c.Get("w"), c.GetCount("d"),
                                c.Get("n"), c.Get("epsilon"), c.Get("delta"));
      });
  add("beyond-worst-case", "KD error in terms of light points and heavy bins",
      {"n", "m", "M", "epsilon", "delta", "w", "d"}, [](const BoundCommand& c) {
        return beyond_worst_case_bound(c.Get("n"), c.Get("m"), c.Get("M"),
                                       c.Get("epsilon"), c.Get("delta"),
                                       c.Get("w"), c.GetCount("d"));
      });
  add("gaussian", "KD error of the grid release on Gaussian data",
      {"n", "d", "sigma", "w", "epsilon", "delta"}, [](const BoundCommand& c) {
        return gaussian_bound(c.Get("n"), c.GetCount("d"), c.Get("sigma"),
                              c.Get("w"), c.Get("epsilon"), c.Get("delta"));
      });
  add("rounding", "KD error of rounding points to bin centers", {"w", "d"},
      [](const BoundCommand& c) {
        return ScalarReport("rounding_error_bound",
                            {{"w", c.Get("w")}, {"d", c.Get("d")}},
                            rounding_error_bound(c.Get("w"), c.GetCount("d")));
      });
  add("tau", "Smallest split threshold that keeps empty nodes unsplit",
      {"h", "hprime", "n", "epsilon", "delta"}, [](const BoundCommand& c) {
        const int h = static_cast<int>(c.GetCount("h"));
        const int hp = static_cast<int>(c.GetCount("hprime"));
        BoundReport r = ScalarReport(
            "tau_floor",
            {{"h", c.Get("h")}, {"hprime", c.Get("hprime")}, {"n", c.Get("n")},
             {"epsilon", c.Get("epsilon")}, {"delta", c.Get("delta")}},
            tau_floor(h, hp, c.GetCount("n"), c.Get("epsilon"), c.Get("delta")));
        r.terms = {{"empty_leaf_upper_bound",
                    empty_leaf_upper_bound(h, hp, c.GetCount("n"))}};
        return r;
      });
  add("empty-leaves", "Upper bound 2^h + n(h' - h) on empty tree leaves",
      {"h", "hprime", "n"}, [](const BoundCommand& c) {
        return ScalarReport(
            "empty_leaf_upper_bound",
            {{"h", c.Get("h")}, {"hprime", c.Get("hprime")}, {"n", c.Get("n")}},
            empty_leaf_upper_bound(static_cast<int>(c.GetCount("h")),
                                   static_cast<int>(c.GetCount("hprime")),
                                   c.GetCount("n")));
      });
  add("kd-to-mmd", "MMD bound implied by a KD sup error", {"value"},
      [](const BoundCommand& c) {
        return ScalarReport(
            "kd_to_mmd", {{"value", c.Get("value")}},
            kd_mmd_conversion(BoundDirection::kKdToMmd, c.Get("value")));
      });
  add("mmd-to-kd", "KD sup bound implied by an MMD", {"value"},
      [](const BoundCommand& c) {
        return ScalarReport(
            "mmd_to_kd", {{"value", c.Get("value")}},
            kd_mmd_conversion(BoundDirection::kMmdToKd, c.Get("value")));
      });
}

// ----------------------------------------------------------------- datagen

class DatagenCommand : public Command {
 public:
  explicit DatagenCommand(CLI::App& parent)
      : Command(parent.add_subcommand("datagen", "Sample a synthetic benchmark "
                                                 "dataset")) {
    app_->add_option("--kind", kind_, "mixture or gaussian")
        ->check(CLI::IsMember({"mixture", "gaussian"}))
        ->default_str(Exact(kind_));
    app_->add_option("--dim", dim_, "Dimension")->default_str(Exact(dim_));
    app_->add_option("--n", n_, "Number of points")->default_str(Exact(n_));
    app_->add_option("--components", components_, "Mixture components")
        ->default_str(Exact(components_));
    app_->add_option("--component-sigma", component_sigma_,
                     "Per-component standard deviation")
        ->default_str(Exact(component_sigma_));
    app_->add_option("--mean-center", mean_center_,
                     "Center of the component means")
        ->default_str(Exact(mean_center_));
    app_->add_option("--mean-sigma", mean_sigma_,
                     "Spread of the component means")
        ->default_str(Exact(mean_sigma_));
    app_->add_option("--sigma", sigma_, "Gaussian kind: standard deviation")
        ->default_str(Exact(sigma_));
    app_->add_option("--out", out_, "Dataset CSV to write");
    app_->add_option("--labels-out", labels_out_,
                     "Mixture kind: component label CSV");
    app_->add_option("--manifest", manifest_,
                     "Manifest path (default: <out>.manifest.json)");
  }

 protected:
  void Run() override {
    Require(!out_.empty(), "out");
    Rng rng(seed_);
    Json manifest = ManifestHeader(*this, seed_);
    std::vector<std::size_t> labels;
    std::optional<Dataset> data;
    if (kind_ == "mixture") {
      const GaussianMixtureSpec spec = benchmark_mixture_spec(
          dim_, rng, component_sigma_, components_, mean_center_, mean_sigma_);
      data = sample_gaussian_mixture(spec, n_, rng, &labels);
      manifest["mixture"] = {{"mixing_weights", spec.mixing_weights},
                             {"means", spec.means},
                             {"component_sigma", spec.component_sigma}};
    } else {
      if (!(sigma_ >= 0.0)) throw UsageError("--sigma must be non-negative");
      data = ScaledStandardGaussian(dim_, n_, sigma_, rng);
    }
    std::ostringstream csv;
    WriteDatasetCsv(csv, *data);
    WriteText(out_, csv.str());
    if (!labels_out_.empty() && !labels.empty()) {
      std::string text = CsvRow({"component"});
      for (std::size_t c : labels) text += CsvRow({std::to_string(c)});
      WriteText(labels_out_, text);
    }
    manifest["outputs"] = {{"dataset", out_}, {"rows", data->size()}};
    WriteManifest(manifest_.empty() ? out_ + ".manifest.json" : manifest_,
                  manifest);
  }

 private:
  std::string kind_ = "mixture";
  std::size_t dim_ = 2;
  std::size_t n_ = 1000;
  std::size_t components_ = 10;
  double component_sigma_ = 30.0;
  double mean_center_ = 100.0;
  double mean_sigma_ = std::sqrt(200.0);
  double sigma_ = 1.0;
  std::string out_;
  std::string labels_out_;
  std::string manifest_;
};

// -------------------------------------------------------------------- eval

class EvalCommand : public Command {
 public:
  explicit EvalCommand(CLI::App& parent)
      : Command(parent.add_subcommand(
            "eval", "MMD and KD sup error of a release against its input")) {
    app_->add_option("--input", input_, "Original dataset CSV");
    app_->add_option("--synthetic", synthetic_, "Weighted CSV from generate");
    app_->add_option("--bandwidth", bandwidth_, "Kernel bandwidth")
        ->default_str(Exact(bandwidth_));
    app_->add_option("--eval-points", eval_points_,
                     "Halton points added to the KD sup net")
        ->default_str(Exact(eval_points_));
    app_->add_option("--out", out_, "Write the JSON report here, not stdout");
  }

 protected:
  void Run() override {
    Require(!input_.empty(), "input");
    Require(!synthetic_.empty(), "synthetic");
    const Dataset data = ReadDatasetCsvFile(input_);
    const WeightedDataset synthetic = ReadWeightedCsvFile(synthetic_);
    if (synthetic.dim() != data.dim()) {
      throw DataError("input has " + std::to_string(data.dim()) +
                      " columns but the release has " +
                      std::to_string(synthetic.dim()));
    }
    const KernelParams params(bandwidth_);
    MmdReference reference(WeightedDataset::FromDataset(data), params);
    Json report = ManifestHeader(*this, seed_);
    report["metrics"] = {
        {"mmd", ReleaseMmd(reference, synthetic)},
        {"kd_sup", ReleaseKdSup(data, synthetic, eval_points_, params)},
        {"eval_net_size", synthetic.size() + eval_points_},
        {"input_rows", data.size()},
        {"synthetic_rows", synthetic.size()},
        {"synthetic_total_weight",
         synthetic.empty() ? 0.0 : synthetic.total_weight()}};
    if (out_.empty()) {
      std::cout << report.dump(2) << "\n";
    } else {
      WriteManifest(out_, report);
    }
  }

 private:
  std::string input_;
  std::string synthetic_;
  double bandwidth_ = 1.0;
  std::size_t eval_points_ = 1000;
  std::string out_;
};

}  // namespace

Command::Command(CLI::App* app) : app_(app) {
  app_->add_option("--seed", seed_, "RNG seed")->default_str(Exact(seed_));
  app_->add_option("--config", config_path_,
                   "JSON file of option values; flags override it");
}

std::string Command::path() const {
  std::string path = app_->get_name();
  for (const CLI::App* p = app_->get_parent(); p && p->get_parent();
       p = p->get_parent()) {
    path = p->get_name() + " " + path;
  }
  return path;
}

template <typename T>
CLI::Option* Command::AddList(const std::string& flag, std::vector<T>& values,
                              const std::string& help) {
  const std::string text = Exact(values);
  CLI::Option* option =
      app_->add_option(flag, values, help + " [default: " + text + "]")
          ->expected(0, CLI::detail::expected_max_vector_size);
  lists_.push_back({option, text, [&values] { values.clear(); }});
  return option;
}

void Command::Execute() {
  if (!config_path_.empty()) ApplyConfig(*app_, LoadConfigFile(config_path_));
  for (const ListOption& list : lists_) {
    if (list.option->count() == 0) {
      list.option->default_str(list.default_text);
      continue;
    }
    const auto& results = list.option->results();
    if (results.empty() || (results.size() == 1 && results[0].empty())) {
      list.clear();
    }
  }
  Run();
}

std::vector<std::unique_ptr<Command>> RegisterCommands(CLI::App& app) {
  std::vector<std::unique_ptr<Command>> commands;
  commands.push_back(std::make_unique<GenerateCommand>(app));
  commands.push_back(std::make_unique<TradeoffCommand>(app));
  commands.push_back(std::make_unique<ScalingCommand>(app));
  commands.push_back(std::make_unique<UniformMixtureCommand>(app));
  RegisterBounds(app, commands);
  commands.push_back(std::make_unique<DatagenCommand>(app));
  commands.push_back(std::make_unique<EvalCommand>(app));
  return commands;
}

}  // namespace dpbins::cli
