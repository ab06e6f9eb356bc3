#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gramlocus/error.hpp"
#include "gramlocus/experiments.hpp"
#include "gramlocus/flatten.hpp"
#include "gramlocus/hosvd.hpp"
#include "gramlocus/io.hpp"
#include "gramlocus/locus.hpp"
#include "gramlocus/sos.hpp"
#include "gramlocus/tensor.hpp"
#include "gramlocus/tri_invariants.hpp"

namespace gramlocus::cli {

namespace {

struct Options {
  int threads = 0;
  std::string out_path;

  std::string input;
  std::string a_path;
  std::string b_path;

  int n = 0;
  int pivot = 1;
  int k = 2;
  bool verify = false;
  int max_order = kDefaultMaxCertificateOrder;

  std::string d_list;
  std::string mode;
  double tol = kDefaultTolerance;

  int grid = 24;
  double threshold = 1e-6;

  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  double margin = kViolationMargin;

  int res = 101;
  std::string coords = "det";
};

class Runner {
 public:
  Runner(const Options& opt, std::istream& in, std::ostream& out) : opt_(opt), in_(in), out_(out) {}

  std::string read_text(const std::string& path) {
    if (path.empty() || path == "-") {
      return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
    }
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  Json read_json(const std::string& path) { return parse_json(read_text(path)); }

  std::ostream& sink() {
    if (opt_.out_path.empty()) return out_;
    if (!file_) {
      file_.emplace(opt_.out_path);
      if (!*file_) throw ValidationError("cannot write '" + opt_.out_path + "'");
    }
    return *file_;
  }

  void emit(const Json& j) { sink() << j.dump() << '\n'; }

  int gram() {
    const GeneralTensor t = general_tensor_from_json(read_json(opt_.input));
    if (t.is_binary()) {
      emit(to_json(gram_tuple(BinaryTensor::make(t.order(), {t.entries().begin(), t.entries().end()}))));
    } else {
      emit(Json{{"dets", gram_dets_general(t)}, {"trace", squared_norm(t.entries())}});
    }
    return kExitOk;
  }

  int svals() {
    const BinaryTensor t = binary_tensor_from_json(read_json(opt_.input));
    emit(to_json(std::span<const SingularPair>(singular_pairs(gram_tuple(t)))));
    return kExitOk;
  }

  int member() {
    std::vector<double> d;
    if (!opt_.d_list.empty()) {
      d = parse_number_list(opt_.d_list);
    } else {
      d = gram_tuple(binary_tensor_from_json(read_json(opt_.input))).dets;
    }
    const int n = static_cast<int>(d.size());
    std::string mode = opt_.mode;
    if (mode.empty()) mode = n == 3 ? "n3" : (n >= 4 ? "conjecture" : "hull");
    const FuzzMode m = parse_fuzz_mode(mode);
    Membership result;
    switch (m) {
      case FuzzMode::Hull: result = hull_membership(d, opt_.tol); break;
      case FuzzMode::N3: result = locus_membership_n3(d, opt_.tol); break;
      case FuzzMode::Conjecture: result = locus_membership_conjecture(d, opt_.tol); break;
    }
    Json j = to_json(result);
    j["mode"] = mode;
    emit(j);
    return kExitOk;
  }

  int sos() {
    if (!opt_.input.empty()) {
      const SosCertificate cert = certificate_from_json(read_json(opt_.input));
      const CertificateCheck check = check_certificate(cert, opt_.threads);
      emit(Json{{"n", cert.order}, {"pivot", cert.pivot + 1}, {"terms", cert.terms.size()},
                {"verified", check.passed}, {"report", check.report}});
      return check.passed ? kExitOk : kExitFailed;
    }
    if (opt_.n < 2) throw ValidationError("--n is required (n >= 2)");
    if (opt_.pivot < 1 || opt_.pivot > opt_.n) throw ValidationError("--pivot must be in [1, n]");
    try {
      const SosCertificate cert = build_certificate(opt_.n, opt_.pivot - 1, opt_.verify, opt_.max_order);
      emit(to_json(cert));
    } catch (const CertificateError& e) {
      emit(Json{{"verified", false}, {"error", e.what()}, {"report", e.diff()}});
      return kExitFailed;
    }
    return kExitOk;
  }

  int hyperdet_cmd() {
    const BinaryTensor t = binary_tensor_from_json(read_json(opt_.input));
    const InvariantVector v = invariant_vector(t);
    emit(Json{{"hyperdet", v.hyperdet}, {"invariants", to_json(v)}});
    return kExitOk;
  }

  int equiv() {
    if (opt_.a_path.empty() || opt_.b_path.empty()) throw ValidationError("--a and --b are required");
    if (opt_.a_path == "-" && opt_.b_path == "-") throw ValidationError("only one of --a, --b may read stdin");
    const BinaryTensor a = binary_tensor_from_json(read_json(opt_.a_path));
    const BinaryTensor b = binary_tensor_from_json(read_json(opt_.b_path));
    EquivOptions eo;
    eo.grid = opt_.grid;
    eo.threshold = opt_.threshold;
    eo.threads = opt_.threads;
    const auto r = equiv_search(a, b, eo);
    Json j{{"found", r.has_value()},
           {"invariant_distance", invariant_distance(invariant_vector(a), invariant_vector(b))}};
    if (r) {
      Json factors = Json::array();
      for (const auto& f : r->transform.factors()) factors.push_back({{"angle", f.angle}, {"reflect", f.reflect}});
      j["transform"] = std::move(factors);
      j["residual"] = r->residual;
    }
    emit(j);
    return kExitOk;
  }

  int fuzz_cmd() {
    if (opt_.n < 2) throw ValidationError("--n is required");
    const FuzzReport r = fuzz(opt_.n, parse_fuzz_mode(opt_.mode.empty() ? "conjecture" : opt_.mode), opt_.samples,
                              opt_.seed, opt_.threads, opt_.margin);
    emit(to_json(r));
    return r.violations == 0 ? kExitOk : kExitFailed;
  }

  int surface() {
    const SurfaceCoords coords = parse_surface_coords(opt_.coords);
    const auto points = surface_grid(opt_.res, opt_.threads);
    write_surface_csv(sink(), points, coords);
    return kExitOk;
  }

  int vertex() {
    emit(to_json(vertex_tensor(opt_.n, opt_.k)));
    return kExitOk;
  }

  int examples() {
    const ExamplesReport r = boundary_examples_report();
    emit(to_json(r));
    return r.passed() ? kExitOk : kExitFailed;
  }

 private:
  const Options& opt_;
  std::istream& in_;
  std::ostream& out_;
  std::optional<std::ofstream> file_;
};

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Gram determinants, singular values and Gram-locus tools for binary tensors", "gramlocus"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", opt.threads, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  app.add_option("--out", opt.out_path, "Write output here instead of stdout");

  const auto input_opt = [&](CLI::App* sub) {
    sub->add_option("--input,-i", opt.input, "Tensor JSON file, stdin when absent");
  };

  auto* gram = app.add_subcommand("gram", "Gram determinants and trace of a tensor");
  input_opt(gram);
  auto* svals = app.add_subcommand("svals", "Higher-order singular value pairs per flattening");
  input_opt(svals);

  auto* member = app.add_subcommand("member", "Classify a determinant tuple");
  member->add_option("--d", opt.d_list, "Comma-separated determinant tuple");
  input_opt(member);
  member->add_option("--mode", opt.mode, "hull | n3 | conjecture (default by n)")
      ->check(CLI::IsMember({"hull", "n3", "conjecture"}));
  member->add_option("--tol", opt.tol, "Boundary tolerance on raw polynomial values")->check(CLI::NonNegativeNumber);

  auto* sos = app.add_subcommand("sos", "Build or verify a sum-of-squares facet certificate");
  sos->add_option("--n", opt.n, "Tensor order")->check(CLI::Range(2, kMaxBinaryOrder));
  sos->add_option("--pivot", opt.pivot, "1-based pivot slot");
  sos->add_flag("--verify", opt.verify, "Check the certificate by exact expansion");
  sos->add_option("--input,-i", opt.input, "Verify this certificate JSON instead of building one");
  sos->add_option("--max-order", opt.max_order, "Refuse to build above this order")
      ->check(CLI::Range(2, kMaxBinaryOrder));

  auto* hyper = app.add_subcommand("hyperdet", "Hyperdeterminant and invariant vector of a 2x2x2 tensor");
  input_opt(hyper);

  auto* equiv = app.add_subcommand("equiv", "Search for an orthogonal equivalence between two 2x2x2 tensors");
  equiv->add_option("--a", opt.a_path, "Target tensor JSON")->required();
  equiv->add_option("--b", opt.b_path, "Tensor JSON to transform")->required();
  equiv->add_option("--grid", opt.grid, "Angle grid points per axis")->check(CLI::Range(1, 1000));
  equiv->add_option("--threshold", opt.threshold, "Largest accepted residual")->check(CLI::PositiveNumber);

  auto* fuzz = app.add_subcommand("fuzz", "Sample random unit tensors and test a membership predicate");
  fuzz->add_option("--n", opt.n, "Tensor order")->required()->check(CLI::Range(2, kMaxBinaryOrder));
  fuzz->add_option("--mode", opt.mode, "hull | n3 | conjecture")->check(CLI::IsMember({"hull", "n3", "conjecture"}));
  fuzz->add_option("--samples", opt.samples, "Number of tensors");
  fuzz->add_option("--seed", opt.seed, "RNG seed");
  fuzz->add_option("--margin", opt.margin, "Violation margin")->check(CLI::NonNegativeNumber);

  auto* surface = app.add_subcommand("surface", "Points of the n = 3 surface Q = 0 as CSV");
  surface->add_option("--res", opt.res, "Grid points per axis over [0, 1/4]")->check(CLI::Range(2, 100000));
  surface->add_option("--coords", opt.coords, "det, or sigma for sigma_max at t = 1")
      ->check(CLI::IsMember({"det", "sigma"}));

  auto* vertex = app.add_subcommand("vertex", "Tensor whose Gram tuple is a hull vertex");
  vertex->add_option("--n", opt.n, "Tensor order")->required()->check(CLI::Range(2, kMaxBinaryOrder));
  vertex->add_option("--k", opt.k, "Number of 1/4 coordinates");

  auto* examples = app.add_subcommand("examples", "Recompute the boundary and hull-violation examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    Runner r(opt, in, out);
    if (gram->parsed()) return r.gram();
    if (svals->parsed()) return r.svals();
    if (member->parsed()) return r.member();
    if (sos->parsed()) return r.sos();
    if (hyper->parsed()) return r.hyperdet_cmd();
    if (equiv->parsed()) return r.equiv();
    if (fuzz->parsed()) return r.fuzz_cmd();
    if (surface->parsed()) return r.surface();
    if (vertex->parsed()) return r.vertex();
    if (examples->parsed()) return r.examples();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace gramlocus::cli
