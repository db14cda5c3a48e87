#include "epdisc/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace epdisc {

using json = nlohmann::ordered_json;

namespace {

std::string dbl(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_dbl(const json& j) {
  const std::string s = j.get<std::string>();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw Error("bad number: " + s);
  return v;
}

json complex_json(const BigComplex& z) { return {{"re", z.re().to_string()}, {"im", z.im().to_string()}}; }

BigComplex complex_from(const json& j, Precision p) {
  return BigComplex(BigReal::from_string(j.at("re").get<std::string>(), p),
                    BigReal::from_string(j.at("im").get<std::string>(), p));
}

json model_json(const ModelSpec& m) {
  return {{"kind", kind_name(m.kind)},
          {"parity", m.parity == Parity::Even ? "even" : "odd"},
          {"M", m.M},
          {"K", m.K},
          {"beta", to_string(m.beta)},
          {"precision_bits", m.precision.bits},
          {"label", m.label()}};
}

ModelSpec model_from(const json& j) {
  ModelSpec m;
  const auto kind = kind_from_name(j.at("kind").get<std::string>());
  if (!kind) throw Error("unknown model kind " + j.at("kind").get<std::string>());
  m.kind = *kind;
  const std::string par = j.at("parity").get<std::string>();
  if (par != "even" && par != "odd") throw Error("bad parity " + par);
  m.parity = par == "even" ? Parity::Even : Parity::Odd;
  m.M = j.at("M").get<long>();
  m.K = j.at("K").get<long>();
  m.beta = parse_rational(j.at("beta").get<std::string>());
  m.precision = Precision{j.at("precision_bits").get<long>()};
  return m;
}

json flags_json(const EpFlags& f) {
  return {{"real_suspect", f.real_suspect},
          {"imaginary_axis", f.imaginary_axis},
          {"conjugate_partner_present", f.conjugate_partner_present},
          {"negation_partner_present", f.negation_partner_present}};
}

EpFlags flags_from(const json& j) {
  EpFlags f;
  f.real_suspect = j.at("real_suspect").get<bool>();
  f.imaginary_axis = j.at("imaginary_axis").get<bool>();
  f.conjugate_partner_present = j.at("conjugate_partner_present").get<bool>();
  f.negation_partner_present = j.at("negation_partner_present").get<bool>();
  return f;
}

}  // namespace

std::string report_to_json(const ScanReport& r) {
  json j;
  j["format"] = "epdisc-scan";
  j["version"] = 1;
  j["model"] = model_json(r.model);
  j["n_min"] = r.n_min;
  j["n_max"] = r.n_max;
  j["tol"] = dbl(r.tol);
  j["precision_bits"] = r.precision.bits;
  j["ring"] = r.ring == RingTag::Exact ? "exact" : "float";
  j["dims"] = json::array();
  for (const auto& d : r.dims) {
    json dj = {{"n", d.n},
               {"ok", d.ok},
               {"error", d.error},
               {"degree_f", d.degree_f},
               {"root_count", d.root_count},
               {"even_reduced", d.even_reduced},
               {"seconds", dbl(d.seconds)}};
    dj["revalidation_log2_shift"] = d.revalidation_log2_shift ? json(dbl(*d.revalidation_log2_shift)) : json(nullptr);
    j["dims"].push_back(dj);
  }
  j["accepted_n"] = r.accepted_n;
  j["accepted_prev"] = r.accepted_prev;
  j["accepted"] = json::array();
  for (const auto& ep : r.accepted) {
    j["accepted"].push_back({{"lambda", complex_json(ep.lambda)},
                             {"residual", ep.residual.to_string()},
                             {"accepted_dim", ep.accepted_dim},
                             {"energy", complex_json(ep.energy)},
                             {"multiplicity", ep.multiplicity},
                             {"coalescence", ep.coalescence},
                             {"disc_order", ep.disc_order},
                             {"refined", ep.refined},
                             {"flags", flags_json(ep.flags)}});
  }
  j["rejected"] = json::array();
  for (const auto& rj : r.rejected) {
    j["rejected"].push_back(
        {{"lambda", complex_json(rj.lambda)}, {"reason", rj.reason}, {"multiplicity", rj.multiplicity}});
  }
  j["groups"] = json::array();
  for (const auto& g : r.groups) j["groups"].push_back({{"kind", group_kind_name(g.kind)}, {"members", g.members}});
  j["warnings"] = r.warnings;
  j["seconds"] = dbl(r.seconds);
  return j.dump(2) + "\n";
}

ScanReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != "epdisc-scan") throw Error("not a scan report");
    if (j.at("version").get<int>() != 1) throw Error("unsupported report version");
    ScanReport r;
    r.model = model_from(j.at("model"));
    r.n_min = j.at("n_min").get<std::size_t>();
    r.n_max = j.at("n_max").get<std::size_t>();
    r.tol = parse_dbl(j.at("tol"));
    r.precision = Precision{j.at("precision_bits").get<long>()};
    const std::string ring = j.at("ring").get<std::string>();
    if (ring != "exact" && ring != "float") throw Error("bad ring " + ring);
    r.ring = ring == "exact" ? RingTag::Exact : RingTag::Float;
    const Precision p = r.precision;
    for (const auto& dj : j.at("dims")) {
      DimensionRecord d;
      d.n = dj.at("n").get<std::size_t>();
      d.ok = dj.at("ok").get<bool>();
      d.error = dj.at("error").get<std::string>();
      d.degree_f = dj.at("degree_f").get<std::size_t>();
      d.root_count = dj.at("root_count").get<std::size_t>();
      d.even_reduced = dj.at("even_reduced").get<bool>();
      d.seconds = parse_dbl(dj.at("seconds"));
      const auto& sh = dj.at("revalidation_log2_shift");
      if (!sh.is_null()) d.revalidation_log2_shift = parse_dbl(sh);
      r.dims.push_back(std::move(d));
    }
    r.accepted_n = j.at("accepted_n").get<std::size_t>();
    r.accepted_prev = j.at("accepted_prev").get<std::size_t>();
    for (const auto& ej : j.at("accepted")) {
      ExceptionalPoint ep;
      ep.lambda = complex_from(ej.at("lambda"), p);
      ep.residual = BigReal::from_string(ej.at("residual").get<std::string>(), p);
      ep.accepted_dim = ej.at("accepted_dim").get<std::size_t>();
      ep.energy = complex_from(ej.at("energy"), p);
      ep.multiplicity = ej.at("multiplicity").get<std::size_t>();
      ep.coalescence = ej.at("coalescence").get<std::size_t>();
      ep.disc_order = ej.at("disc_order").get<std::size_t>();
      ep.refined = ej.at("refined").get<bool>();
      ep.flags = flags_from(ej.at("flags"));
      r.accepted.push_back(std::move(ep));
    }
    for (const auto& rj : j.at("rejected")) {
      r.rejected.push_back({complex_from(rj.at("lambda"), p), rj.at("reason").get<std::string>(),
                            rj.at("multiplicity").get<std::size_t>()});
    }
    for (const auto& gj : j.at("groups")) {
      const auto kind = group_kind_from_name(gj.at("kind").get<std::string>());
      if (!kind) throw Error("bad group kind");
      r.groups.push_back({*kind, gj.at("members").get<std::vector<std::size_t>>()});
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.seconds = parse_dbl(j.at("seconds"));
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed scan report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(std::string("malformed scan report: ") + e.what());
  }
}

std::string model_id(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::MathieuPiEven:
    case ModelKind::MathieuPiOdd:
    case ModelKind::Mathieu2PiEven:
    case ModelKind::Mathieu2PiOdd:
      return "mathieu";
    default:
      return kind_name(spec.kind);
  }
}

std::string model_class(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::MathieuPiEven:
      return "pi-even";
    case ModelKind::MathieuPiOdd:
      return "pi-odd";
    case ModelKind::Mathieu2PiEven:
      return "2pi-even";
    case ModelKind::Mathieu2PiOdd:
      return "2pi-odd";
    case ModelKind::BoxX2:
      return spec.parity == Parity::Even ? "even" : "odd";
    default:
      return "";
  }
}

std::string accepted_csv(const ScanReport& r) {
  std::ostringstream os;
  os << "model,M,K,class,n,re,im,residual\n";
  for (const auto& ep : r.accepted) {
    os << model_id(r.model) << ',' << r.model.M << ',' << r.model.K << ',' << model_class(r.model) << ','
       << ep.accepted_dim << ',' << ep.lambda.re().to_string(17) << ',' << ep.lambda.im().to_string(17) << ','
       << ep.residual.to_string(17) << '\n';
  }
  return os.str();
}

std::string figure_csv(const std::vector<std::pair<std::string, const ScanReport*>>& series) {
  std::ostringstream os;
  os << "series,re,im\n";
  for (const auto& [name, rep] : series) {
    for (const auto& ep : rep->accepted) {
      os << name << ',' << ep.lambda.re().to_string(17) << ',' << ep.lambda.im().to_string(17) << '\n';
    }
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename to " + path + ": " + ec.message());
  }
}

}  // namespace epdisc
