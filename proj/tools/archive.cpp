#include "archive.hpp"

#include <cmath>
#include <fstream>

namespace nnts::tool {

namespace {

using json = nlohmann::ordered_json;

std::string retraction_name(Retraction r) {
  return r == Retraction::kShifted ? "shifted" : "direction";
}

Retraction parse_retraction(const std::string& name) {
  if (name == "shifted") {
    return Retraction::kShifted;
  }
  if (name == "direction") {
    return Retraction::kDirection;
  }
  throw InvalidArgument("unknown retraction '" + name + "'");
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) {
    return std::nullopt;
  }
  return j.at(key).get<T>();
}

NntsParams params_from_pairs(const json& pairs) {
  ComplexVector c(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& p = pairs.at(k);
    if (!p.is_array() || p.size() != 2) {
      throw InvalidArgument("coefficient " + std::to_string(k) + " is not an [re, im] pair");
    }
    c[static_cast<Eigen::Index>(k)] = Complex(p.at(0).get<double>(), p.at(1).get<double>());
  }
  if (c.size() == 0) {
    throw InvalidArgument("fit has no coefficients");
  }
  if (!(std::abs(c.squaredNorm() - kSquaredNorm) <= 1e-10)) {
    throw InvalidArgument("archived coefficients violate the norm constraint");
  }
  try {
    return NntsParams::from_coefficients(c);
  } catch (const InvalidArgument&) {
    return canonicalize(c);
  }
}

}  // namespace

const ArchivedFit* FitArchive::find(int order) const {
  for (const auto& f : fits) {
    if (f.order == order) {
      return &f;
    }
  }
  return nullptr;
}

ArchivedFit archive_fit(int order, const FitResult& result) {
  ArchivedFit f;
  f.order = order;
  f.loglik = result.loglik;
  f.iterations = result.iterations;
  f.converged = result.converged;
  f.grad_norm = result.grad_norm;
  f.start = result.start;
  f.params = result.params;
  return f;
}

json to_json(const FitArchive& a) {
  json j;
  j["tool"] = {{"name", a.tool}, {"version", a.version}};
  j["dataset"] = {{"path", a.dataset.path},
                  {"kind", a.dataset.kind},
                  {"unit", a.dataset.unit},
                  {"partition", a.dataset.partition},
                  {"bounds", a.dataset.bounds},
                  {"size", a.dataset.size}};
  j["config"] = {{"tol", a.config.tol},
                 {"grad_tol", a.config.grad_tol},
                 {"max_iters", a.config.max_iters},
                 {"restarts", a.config.restarts},
                 {"seed", a.config.seed},
                 {"step_guard", a.config.step_guard},
                 {"max_halvings", a.config.max_halvings},
                 {"retraction", retraction_name(a.config.retraction)}};
  j["seed"] = a.config.seed;
  j["selection"] = {{"criterion", a.selection.criterion},
                    {"selected_order", optional_json(a.selection.selected_order)},
                    {"lrt", a.selection.lrt},
                    {"alpha", a.selection.alpha},
                    {"saturated_order", optional_json(a.selection.saturated_order)},
                    {"parsimonious_order", optional_json(a.selection.parsimonious_order)}};
  json fits = json::array();
  for (const auto& f : a.fits) {
    json coeffs = json::array();
    for (Eigen::Index k = 0; k < f.params.coefficients().size(); ++k) {
      const Complex ck = f.params[static_cast<int>(k)];
      coeffs.push_back(json::array({ck.real(), ck.imag()}));
    }
    fits.push_back({{"M", f.order},
                    {"loglik", f.loglik},
                    {"iterations", f.iterations},
                    {"converged", f.converged},
                    {"grad_norm", f.grad_norm},
                    {"start", f.start},
                    {"coefficients", coeffs}});
  }
  j["fits"] = fits;
  return j;
}

FitArchive archive_from_json(const json& j) {
  try {
    FitArchive a;
    a.tool = j.at("tool").at("name").get<std::string>();
    a.version = j.at("tool").at("version").get<std::string>();
    const auto& d = j.at("dataset");
    a.dataset.path = d.at("path").get<std::string>();
    a.dataset.kind = d.at("kind").get<std::string>();
    a.dataset.unit = d.at("unit").get<std::string>();
    a.dataset.partition = d.at("partition").get<std::string>();
    a.dataset.bounds = d.at("bounds").get<std::vector<double>>();
    a.dataset.size = d.at("size").get<double>();
    const auto& c = j.at("config");
    a.config.tol = c.at("tol").get<double>();
    a.config.grad_tol = c.at("grad_tol").get<double>();
    a.config.max_iters = c.at("max_iters").get<int>();
    a.config.restarts = c.at("restarts").get<int>();
    a.config.seed = c.at("seed").get<std::uint64_t>();
    a.config.step_guard = c.at("step_guard").get<bool>();
    a.config.max_halvings = c.at("max_halvings").get<int>();
    a.config.retraction = parse_retraction(c.at("retraction").get<std::string>());
    const auto& s = j.at("selection");
    a.selection.criterion = s.at("criterion").get<std::string>();
    a.selection.selected_order = optional_from<int>(s, "selected_order");
    a.selection.lrt = s.at("lrt").get<bool>();
    a.selection.alpha = s.at("alpha").get<double>();
    a.selection.saturated_order = optional_from<int>(s, "saturated_order");
    a.selection.parsimonious_order = optional_from<int>(s, "parsimonious_order");
    for (const auto& f : j.at("fits")) {
      ArchivedFit af;
      af.order = f.at("M").get<int>();
      af.loglik = f.at("loglik").get<double>();
      af.iterations = f.at("iterations").get<int>();
      af.converged = f.at("converged").get<bool>();
      af.grad_norm = f.at("grad_norm").get<double>();
      af.start = f.at("start").get<int>();
      af.params = params_from_pairs(f.at("coefficients"));
      if (af.params.order() != af.order) {
        throw InvalidArgument("fit M=" + std::to_string(af.order) + " has " +
                              std::to_string(af.params.order() + 1) + " coefficients");
      }
      a.fits.push_back(std::move(af));
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed fit archive: ") + e.what());
  }
}

void save_archive(const std::filesystem::path& path, const FitArchive& archive) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << to_json(archive).dump(2) << '\n';
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

FitArchive load_archive(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("cannot parse " + path.string() + ": " + e.what());
  }
  return archive_from_json(j);
}

}  // namespace nnts::tool
