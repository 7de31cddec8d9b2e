#include "gkf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "gkf/cache.hpp"
#include "gkf/crystal.hpp"
#include "gkf/gkf_complex.hpp"
#include "gkf/invariant_split.hpp"
#include "gkf/partition.hpp"
#include "gkf/tensor_decomp.hpp"

namespace gkf {

namespace {

using json = nlohmann::ordered_json;

struct BadArguments : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Tsv, Json };

struct Job {
  std::string command;
  int n = 3;
  std::optional<int> w;
  std::optional<int> m;
  std::optional<int> degree;
  std::vector<std::string> shapes;
  std::string space;
  std::string format;
  std::string cache_dir;
  bool no_cache = false;
  unsigned threads = 0;
  bool strict_grading = false;
  bool extended = false;
  bool count = false;
  bool exact = false;
  bool quiet = false;
  std::vector<int> weights;
};

Format resolve_format(const Job& job) {
  std::string f = job.format;
  if (f.empty()) f = job.command == "decompose" ? "json" : "text";
  if (f == "text") return Format::Text;
  if (f == "tsv") return Format::Tsv;
  if (f == "json") return Format::Json;
  throw BadArguments("unknown format '" + f + "'");
}

Partition parse_shape(const std::string& text, int n) {
  try {
    return Partition::parse(text, n);
  } catch (const std::invalid_argument& e) {
    throw BadArguments("invalid partition '" + text + "': " + e.what());
  }
}

std::string opt_str(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "?"; }
std::string opt_str(const std::optional<long>& v) { return v ? std::to_string(*v) : "?"; }

template <class T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json decomposition_json(const IrrepDecomposition& d) { return json::parse(d.to_json()); }

void print_decomposition(const IrrepDecomposition& d, Format f, std::ostream& out) {
  switch (f) {
    case Format::Text: out << d.to_string() << "\n"; break;
    case Format::Tsv:
      out << "lambda\tmult\tdim\n";
      for (const auto& [lambda, mult] : d.sorted_descending())
        out << lambda.to_string() << "\t" << mult << "\t" << weyl_dim(d.rank(), lambda) << "\n";
      break;
    case Format::Json: out << decomposition_json(d).dump(2) << "\n"; break;
  }
}

void validate_weight(int w) {
  if (w < 0 || w % 2 != 0) throw BadArguments("weight must be even and non-negative, got " + std::to_string(w));
  if (w > 10) throw BadArguments("weights above 10 are not supported");
}

class Runner {
 public:
  Runner(const Job& job, std::ostream& out, std::ostream& err) : job_(job), out_(out), err_(err) {
    format_ = resolve_format(job);
    if (job.n < 1) throw BadArguments("--n must be positive");
    if (!job.no_cache) cache_ = Cache(job.cache_dir.empty() ? Cache::default_dir() : std::filesystem::path(job.cache_dir));
    threads_ = job.threads ? job.threads : std::max(1U, std::thread::hardware_concurrency());
  }

  int run() {
    const auto& c = job_.command;
    if (c == "dim") return dim();
    if (c == "crystal") return crystal();
    if (c == "tensor") return tensor();
    if (c == "decompose") return decompose();
    if (c == "cochain-dims") return cochain_dims();
    if (c == "betti") return betti();
    if (c == "report") return report();
    throw BadArguments("no command given");
  }

 private:
  void progress(const std::string& msg) const {
    if (!job_.quiet) err_ << "[gkf] " << msg << std::endl;
  }

  ComplexOptions complex_options() const {
    ComplexOptions o;
    o.threads = threads_;
    o.extended = job_.extended;
    o.strict_grading = job_.strict_grading;
    o.cache = cache_.enabled() ? &cache_ : nullptr;
    o.progress = [this](const std::string& s) { progress(s); };
    return o;
  }

  void require_complex_rank() const {
    if (job_.n != 3) throw BadArguments("cochain computations support n = 3 only");
  }

  int dim() {
    json j;
    j["n"] = job_.n;
    std::string label;
    std::uint64_t value = 0;
    if (job_.degree) {
      if (*job_.degree < 0) throw BadArguments("--degree must be non-negative");
      value = poly_dim(job_.n, *job_.degree);
      label = "S" + std::to_string(*job_.degree);
      j["degree"] = *job_.degree;
    } else if (job_.shapes.size() == 1) {
      const Partition p = parse_shape(job_.shapes.front(), job_.n);
      value = weyl_dim(job_.n, p);
      label = "V[" + p.to_string() + "]";
      j["shape"] = p.parts();
    } else {
      throw BadArguments("dim needs --shape or --degree");
    }
    j["dim"] = value;
    switch (format_) {
      case Format::Text: out_ << "dim " << label << " = " << value << "\n"; break;
      case Format::Tsv: out_ << "n\tspace\tdim\n" << job_.n << "\t" << label << "\t" << value << "\n"; break;
      case Format::Json: out_ << j.dump(2) << "\n"; break;
    }
    return kExitOk;
  }

  int crystal() {
    if (job_.shapes.size() != 1) throw BadArguments("crystal needs exactly one --shape");
    const Partition p = parse_shape(job_.shapes.front(), job_.n);
    const auto base = enumerate_crystal_base(job_.n, p);
    if (job_.count) {
      if (format_ == Format::Json)
        out_ << json{{"n", job_.n}, {"shape", p.parts()}, {"count", base.size()}}.dump(2) << "\n";
      else
        out_ << base.size() << "\n";
      return kExitOk;
    }
    switch (format_) {
      case Format::Text:
      case Format::Tsv:
        for (const auto& t : base) out_ << t.to_string() << "\n";
        break;
      case Format::Json: {
        json arr = json::array();
        for (const auto& t : base) arr.push_back(t.to_string());
        out_ << json{{"n", job_.n}, {"shape", p.parts()}, {"count", base.size()}, {"tableaux", arr}}.dump(2) << "\n";
        break;
      }
    }
    return kExitOk;
  }

  int tensor() {
    if (job_.shapes.size() < 2) throw BadArguments("tensor needs at least two --shape arguments");
    IrrepDecomposition acc(job_.n);
    acc.add(Partition::trivial(job_.n));
    for (const auto& s : job_.shapes) {
      IrrepDecomposition f(job_.n);
      f.add(parse_shape(s, job_.n));
      acc = tensor_product(acc, f);
    }
    print_decomposition(acc, format_, out_);
    return kExitOk;
  }

  SpaceSpec parse_space() const {
    if (job_.space.empty()) throw BadArguments("--space is required");
    try {
      return SpaceSpec::parse(job_.space, job_.n);
    } catch (const std::invalid_argument& e) {
      throw BadArguments(std::string("invalid --space: ") + e.what());
    }
  }

  int decompose() {
    if (job_.n > 3) throw BadArguments("decompose supports n <= 3");
    const SpaceSpec s = parse_space();
    const std::string key = Cache::key("decompose", s.rank(), s.to_string());
    std::optional<IrrepDecomposition> d;
    if (auto hit = cache_.load_text(key)) d = IrrepDecomposition::from_json(*hit);
    if (!d) {
      DecomposeOptions o;
      o.threads = threads_;
      o.exact = job_.exact;
      o.progress = [this](std::size_t done, std::size_t total) {
        progress("decompose: " + std::to_string(done) + "/" + std::to_string(total) + " systems");
      };
      DecomposeStats st;
      d = decompose_space(s, o, &st);
      progress("dominant weights " + std::to_string(st.dominant_weights) + ", candidates " + std::to_string(st.candidates));
      cache_.store_text(key, d->to_json());
    }
    print_decomposition(*d, format_, out_);
    return kExitOk;
  }

  int cochain_dims() {
    require_complex_rank();
    if (!job_.w) throw BadArguments("--w is required");
    validate_weight(*job_.w);
    const int w = *job_.w;
    std::vector<int> degrees;
    if (job_.m) degrees.push_back(*job_.m);
    else
      for (int m = 1; m <= w; ++m) degrees.push_back(m);
    const auto opts = complex_options();
    json arr = json::array();
    if (format_ == Format::Tsv) out_ << "w\tm\ttype\tspace\tdim\tmethod\n";
    if (format_ == Format::Text) out_ << "weight " << w << "\n";
    for (int m : degrees) {
      const auto space = build_relative_cochain_space(job_.n, w, m, opts);
      json types = json::array();
      for (const auto& s : space.summands()) {
        const std::string spec = s.type.space(job_.n).to_string();
        if (format_ == Format::Tsv)
          out_ << w << "\t" << m << "\t" << s.type.to_string() << "\t" << spec << "\t" << opt_str(s.dimension) << "\t" << s.method << "\n";
        types.push_back({{"type", s.type.to_string()}, {"space", spec}, {"dim", opt_json(s.dimension)}, {"method", s.method}});
      }
      if (format_ == Format::Text) {
        out_ << "  C^" << m << " dim " << opt_str(space.dimension()) << "\n";
        for (const auto& s : space.summands())
          out_ << "    " << s.type.space(job_.n).to_string() << ": " << opt_str(s.dimension) << "\n";
      }
      arr.push_back({{"m", m}, {"dim", opt_json(space.dimension())}, {"types", types}});
    }
    if (format_ == Format::Json) out_ << json{{"n", job_.n}, {"w", w}, {"degrees", arr}}.dump(2) << "\n";
    return kExitOk;
  }

  static json report_json(const ComplexReport& r) {
    json rows = json::array();
    for (int j = 0; j <= r.w; ++j)
      rows.push_back({{"j", j}, {"dim", opt_json(r.dims[j])}, {"rank", opt_json(r.ranks[j])}, {"betti", opt_json(r.betti[j])}});
    return {{"n", r.n}, {"w", r.w}, {"strict_grading", r.strict_grading}, {"rows", rows}, {"euler", opt_json(r.euler)},
            {"euler_from_dims", opt_json(r.euler_from_dims)}};
  }

  void print_report(const ComplexReport& r, bool header) {
    switch (format_) {
      case Format::Text:
        out_ << "weight " << r.w << " (n=" << r.n << (r.strict_grading ? ", strict grading" : "") << ")\n";
        out_ << "  j  dim  rank d_j  betti\n";
        for (int j = 0; j <= r.w; ++j)
          out_ << "  " << j << "  " << opt_str(r.dims[j]) << "  " << opt_str(r.ranks[j]) << "  " << opt_str(r.betti[j]) << "\n";
        out_ << "  euler " << opt_str(r.euler) << "\n";
        break;
      case Format::Tsv:
        if (header) out_ << "w\tj\tdim\trank\tbetti\n";
        for (int j = 0; j <= r.w; ++j)
          out_ << r.w << "\t" << j << "\t" << opt_str(r.dims[j]) << "\t" << opt_str(r.ranks[j]) << "\t" << opt_str(r.betti[j]) << "\n";
        break;
      case Format::Json: out_ << report_json(r).dump(2) << "\n"; break;
    }
  }

  int betti() {
    require_complex_rank();
    if (!job_.w) throw BadArguments("--w is required");
    validate_weight(*job_.w);
    print_report(betti_numbers(job_.n, *job_.w, complex_options()), true);
    return kExitOk;
  }

  int report() {
    require_complex_rank();
    std::vector<int> ws = job_.weights;
    if (job_.w) ws.push_back(*job_.w);
    if (ws.empty()) ws = {2, 4, 6};
    for (int w : ws) validate_weight(w);
    const auto opts = complex_options();
    if (format_ == Format::Json) {
      json arr = json::array();
      for (int w : ws) arr.push_back(report_json(betti_numbers(job_.n, w, opts)));
      out_ << arr.dump(2) << "\n";
      return kExitOk;
    }
    bool first = true;
    for (int w : ws) {
      print_report(betti_numbers(job_.n, w, opts), first);
      first = false;
    }
    return kExitOk;
  }

  const Job& job_;
  std::ostream& out_;
  std::ostream& err_;
  Format format_ = Format::Text;
  Cache cache_;
  unsigned threads_ = 1;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Job job;
  CLI::App app{"Relative GKF cohomology of formal Hamiltonian vector fields"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", job.n, "rank n of sp(2n)");
    sub->add_option("--format", job.format, "text, tsv or json")->check(CLI::IsMember({"text", "tsv", "json"}));
    sub->add_option("--cache-dir", job.cache_dir, "cache directory (default $GKF_CACHE_DIR or .gkf-cache)");
    sub->add_flag("--no-cache", job.no_cache, "disable the result cache");
    sub->add_option("--threads", job.threads, "worker threads (default: all cores)");
    sub->add_flag("--quiet", job.quiet, "suppress progress on stderr");
  };
  auto add_complex = [&](CLI::App* sub) {
    sub->add_flag("--strict-grading", job.strict_grading, "report b^0 = 0 for positive weight");
    sub->add_flag("--extended", job.extended, "allow the Λ⁶S₃-sized system");
  };

  auto* dim = app.add_subcommand("dim", "Weyl dimension of V_λ or poly_dim(n, k)");
  add_common(dim);
  dim->add_option("--shape", job.shapes, "partition, e.g. 4,0,0");
  dim->add_option("--degree", job.degree, "polynomial degree k");

  auto* crystal = app.add_subcommand("crystal", "KN tableaux of shape λ");
  add_common(crystal);
  crystal->add_option("--shape", job.shapes, "partition")->required();
  crystal->add_flag("--count", job.count, "print only the number of tableaux");

  auto* tensor = app.add_subcommand("tensor", "Tensor product decomposition via crystal action");
  add_common(tensor);
  tensor->add_option("--shape", job.shapes, "partition; repeat for each factor")->required();

  auto* decompose = app.add_subcommand("decompose", "Irreducible decomposition of a space spec");
  add_common(decompose);
  decompose->add_option("--space", job.space, "e.g. \"L2 S3\" or \"L4 S3 * L1 S4\"")->required();
  decompose->add_flag("--exact", job.exact, "solve every system exactly instead of modularly");

  auto* cochain = app.add_subcommand("cochain-dims", "Dimensions of the relative cochain spaces");
  add_common(cochain);
  add_complex(cochain);
  cochain->add_option("--w", job.w, "GKF weight")->required();
  cochain->add_option("--m", job.m, "single degree");

  auto* betti = app.add_subcommand("betti", "Betti numbers at one weight");
  add_common(betti);
  add_complex(betti);
  betti->add_option("--w", job.w, "GKF weight")->required();

  auto* report = app.add_subcommand("report", "Dims, ranks and Betti numbers for several weights");
  add_common(report);
  add_complex(report);
  report->add_option("--w", job.weights, "weights (default 2 4 6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadArguments;
  }
  for (auto* sub : app.get_subcommands()) job.command = sub->get_name();

  try {
    Runner runner(job, out, err);
    return runner.run();
  } catch (const BadArguments& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const DimensionAuditError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace gkf
