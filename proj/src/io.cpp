#include "gramlocus/io.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "gramlocus/error.hpp"

namespace gramlocus {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const BinaryTensor& tensor) {
  return Json{{"dims", std::vector<int>(static_cast<std::size_t>(tensor.order()), 2)},
              {"entries", std::vector<double>(tensor.entries().begin(), tensor.entries().end())}};
}

Json to_json(const GeneralTensor& tensor) {
  return Json{{"dims", std::vector<int>(tensor.dims().begin(), tensor.dims().end())},
              {"entries", std::vector<double>(tensor.entries().begin(), tensor.entries().end())}};
}

namespace {

std::vector<double> read_entries(const Json& j) {
  const Json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("entries")) throw ValidationError("tensor JSON needs an \"entries\" array");
    arr = &j.at("entries");
  }
  if (!arr->is_array()) throw ValidationError("tensor entries must be an array");
  std::vector<double> out;
  out.reserve(arr->size());
  for (const auto& v : *arr) {
    if (!v.is_number()) throw ValidationError("tensor entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

int binary_order(std::size_t size) {
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  if ((std::size_t{1} << n) != size) throw ValidationError("entry count " + std::to_string(size) + " is not a power of two");
  return n;
}

std::vector<std::uint8_t> read_bits(const Json& j, int order) {
  if (!j.is_array() || static_cast<int>(j.size()) != order) {
    throw ValidationError("index must be an array of " + std::to_string(order) + " bits");
  }
  std::vector<std::uint8_t> bits;
  for (const auto& b : j) {
    if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1)) throw ValidationError("index bits must be 0 or 1");
    bits.push_back(static_cast<std::uint8_t>(b.get<int>()));
  }
  return bits;
}

Json bits_json(int order, std::uint32_t offset) {
  const MultiIndex idx = MultiIndex::decode(order, offset);
  return Json(std::vector<int>(idx.bits().begin(), idx.bits().end()));
}

}  // namespace

GeneralTensor general_tensor_from_json(const Json& j) {
  std::vector<double> entries = read_entries(j);
  std::vector<int> dims;
  if (j.is_object() && j.contains("dims")) {
    const Json& d = j.at("dims");
    if (!d.is_array()) throw ValidationError("\"dims\" must be an array");
    for (const auto& x : d) {
      if (!x.is_number_integer()) throw ValidationError("\"dims\" must hold integers");
      dims.push_back(x.get<int>());
    }
  } else {
    dims.assign(static_cast<std::size_t>(binary_order(entries.size())), 2);
  }
  return GeneralTensor::make(std::move(dims), std::move(entries));
}

BinaryTensor binary_tensor_from_json(const Json& j) {
  const GeneralTensor g = general_tensor_from_json(j);
  if (!g.is_binary()) throw ValidationError("expected a binary (2 x ... x 2) tensor");
  return BinaryTensor::make(g.order(), std::vector<double>(g.entries().begin(), g.entries().end()));
}

Json to_json(const SosCertificate& cert) {
  Json terms = Json::array();
  for (const auto& t : cert.terms) {
    Json form = Json::array();
    for (const auto& f : t.form.terms()) {
      form.push_back({{"sign", f.sign}, {"i", bits_json(cert.order, f.i)}, {"j", bits_json(cert.order, f.j)}});
    }
    terms.push_back({{"coeff", to_string(t.coeff)}, {"form", std::move(form)}});
  }
  return Json{{"n", cert.order}, {"pivot", cert.pivot + 1}, {"terms", std::move(terms)}};
}

SosCertificate certificate_from_json(const Json& j) {
  try {
    SosCertificate cert;
    cert.order = j.at("n").get<int>();
    if (cert.order < 2 || cert.order > kMaxBinaryOrder) throw ValidationError("certificate order out of range");
    cert.pivot = j.at("pivot").get<int>() - 1;
    if (cert.pivot < 0 || cert.pivot >= cert.order) throw ValidationError("pivot must be in [1, n]");
    for (const auto& t : j.at("terms")) {
      CertificateTerm term;
      const Json& c = t.at("coeff");
      term.coeff = c.is_string() ? parse_rational(c.get<std::string>()) : parse_rational(std::to_string(c.get<std::int64_t>()));
      std::vector<FormTerm> form;
      for (const auto& f : t.at("form")) {
        const int sign = f.at("sign").get<int>();
        if (sign != 1 && sign != -1) throw ValidationError("sign must be +1 or -1");
        const auto i = MultiIndex(read_bits(f.at("i"), cert.order)).encode();
        const auto k = MultiIndex(read_bits(f.at("j"), cert.order)).encode();
        form.push_back({sign, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k)});
      }
      term.form = QuadraticForm(std::move(form));
      cert.terms.push_back(std::move(term));
    }
    return cert;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed certificate: ") + e.what());
  }
}

Json to_json(const GramTuple& tuple) { return Json{{"dets", tuple.dets}, {"trace", tuple.trace}}; }

Json to_json(std::span<const SingularPair> pairs) {
  Json out = Json::array();
  for (const auto& p : pairs) out.push_back({{"sigma_max", p.sigma_max}, {"sigma_min", p.sigma_min}});
  return out;
}

Json to_json(const Membership& m) {
  Json out{{"status", to_string(m.status)}, {"q1", m.q1}};
  out["region"] = m.region ? Json(to_string(*m.region)) : Json(nullptr);
  out["q2"] = std::isnan(m.q2) ? Json(nullptr) : Json(m.q2);
  return out;
}

Json to_json(const InvariantVector& v) {
  return Json{{"d1", v.d1}, {"d2", v.d2}, {"d3", v.d3}, {"t", v.t}, {"hyperdet", v.hyperdet}};
}

Json to_json(const FuzzReport& r) {
  return Json{{"n", r.order},
              {"mode", to_string(r.mode)},
              {"samples", r.samples},
              {"seed", r.seed},
              {"violations", r.violations},
              {"near_boundary", r.near_boundary},
              {"worst_margin", r.worst_margin},
              {"worst_point", r.worst_point},
              {"elapsed", r.elapsed}};
}

Json to_json(const ExamplesReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"expected", c.expected}});
  }
  return Json{{"passed", report.passed()}, {"checks", std::move(checks)}};
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("not a number: '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v)) {
      throw ValidationError("not a number: '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("empty number list");
  return out;
}

void write_surface_csv(std::ostream& out, std::span<const SurfacePoint> points, SurfaceCoords coords) {
  const bool sigma = coords == SurfaceCoords::Sigma;
  out << (sigma ? "s1,s2,s3\n" : "d1,d2,d3\n");
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  for (const auto& p : points) {
    const auto& v = sigma ? p.sigma : p.d;
    out << v[0] << ',' << v[1] << ',' << v[2] << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

}  // namespace gramlocus
