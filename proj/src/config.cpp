#include <charconv>
#include <fstream>
#include <sstream>

#include "pbis/experiment.hpp"

namespace pbis {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument("config: " + key + " expects an integer, got \"" + value + "\"");
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used == value.size()) return x;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("config: " + key + " expects a number, got \"" + value + "\"");
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw InvalidArgument("config: " + key + " expects true or false, got \"" + value + "\"");
}

}  // namespace

void ExperimentConfig::validate() const {
  model.validate();
  core.validate();
  if (rounds < 0) throw InvalidArgument("config: rounds must be >= 0");
  if (!(eps > 0.0)) throw InvalidArgument("config: eps must be positive");
  if (!(tail_tol > 0.0) || tail_tol > 1e-6) {
    throw InvalidArgument("config: tail_tol must lie in (0, 1e-6]");
  }
  if (max_iter < 1) throw InvalidArgument("config: max_iter must be >= 1");
  if (threads < 1) throw InvalidArgument("config: threads must be >= 1");
}

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n") cfg.model.n = parse_integer<std::size_t>(key, value);
  else if (key == "d_plus") cfg.model.d_plus = parse_real(key, value);
  else if (key == "d_minus") cfg.model.d_minus = parse_real(key, value);
  else if (key == "seed") cfg.model.seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "c") cfg.core.c = parse_real(key, value);
  else if (key == "outside_cap") cfg.core.outside_cap = parse_integer<std::size_t>(key, value);
  else if (key == "rounds") cfg.rounds = parse_integer<long long>(key, value);
  else if (key == "eps") cfg.eps = parse_real(key, value);
  else if (key == "tail_tol") cfg.tail_tol = parse_real(key, value);
  else if (key == "max_iter") cfg.max_iter = parse_integer<std::size_t>(key, value);
  else if (key == "phi_mc_samples") cfg.phi_mc_samples = parse_integer<std::uint64_t>(key, value);
  else if (key == "census") cfg.census = parse_bool(key, value);
  else if (key == "census_depth") cfg.census_depth = parse_integer<std::uint32_t>(key, value);
  else if (key == "census_vertices") cfg.census_vertices = parse_integer<std::size_t>(key, value);
  else if (key == "census_tree_samples") {
    cfg.census_tree_samples = parse_integer<std::uint64_t>(key, value);
  } else if (key == "threads") cfg.threads = parse_integer<unsigned>(key, value);
  else if (key == "record_timing") cfg.record_timing = parse_bool(key, value);
  else if (key == "out") cfg.out = value;
  else if (key == "trace_csv") cfg.trace_csv = value;
  else throw InvalidArgument("config: unknown key \"" + key + "\"");
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    set_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  base.validate();
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string format_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "n = " << cfg.model.n << "\n"
     << "d_plus = " << cfg.model.d_plus << "\n"
     << "d_minus = " << cfg.model.d_minus << "\n"
     << "seed = " << cfg.model.seed << "\n"
     << "c = " << cfg.core.c << "\n"
     << "outside_cap = " << cfg.core.outside_cap << "\n"
     << "rounds = " << cfg.rounds << "\n"
     << "eps = " << cfg.eps << "\n"
     << "tail_tol = " << cfg.tail_tol << "\n"
     << "max_iter = " << cfg.max_iter << "\n"
     << "phi_mc_samples = " << cfg.phi_mc_samples << "\n"
     << "census = " << (cfg.census ? "true" : "false") << "\n"
     << "census_depth = " << cfg.census_depth << "\n"
     << "census_vertices = " << cfg.census_vertices << "\n"
     << "census_tree_samples = " << cfg.census_tree_samples << "\n"
     << "threads = " << cfg.threads << "\n"
     << "record_timing = " << (cfg.record_timing ? "true" : "false") << "\n";
  if (!cfg.out.empty()) os << "out = " << cfg.out << "\n";
  if (!cfg.trace_csv.empty()) os << "trace_csv = " << cfg.trace_csv << "\n";
  return os.str();
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  return {
      {"n", cfg.model.n},
      {"d_plus", cfg.model.d_plus},
      {"d_minus", cfg.model.d_minus},
      {"seed", cfg.model.seed},
      {"c", cfg.core.c},
      {"outside_cap", cfg.core.outside_cap},
      {"rounds", cfg.rounds},
      {"eps", cfg.eps},
      {"tail_tol", cfg.tail_tol},
      {"max_iter", cfg.max_iter},
      {"phi_mc_samples", cfg.phi_mc_samples},
      {"census", cfg.census},
      {"census_depth", cfg.census_depth},
      {"census_vertices", cfg.census_vertices},
      {"census_tree_samples", cfg.census_tree_samples},
      {"threads", cfg.threads},
      {"record_timing", cfg.record_timing},
      {"out", cfg.out},
      {"trace_csv", cfg.trace_csv},
  };
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.model.n = j.at("n").get<std::size_t>();
  cfg.model.d_plus = j.at("d_plus").get<double>();
  cfg.model.d_minus = j.at("d_minus").get<double>();
  cfg.model.seed = j.at("seed").get<std::uint64_t>();
  cfg.core.c = j.at("c").get<double>();
  cfg.core.outside_cap = j.at("outside_cap").get<std::size_t>();
  cfg.rounds = j.at("rounds").get<long long>();
  cfg.eps = j.at("eps").get<double>();
  cfg.tail_tol = j.at("tail_tol").get<double>();
  cfg.max_iter = j.at("max_iter").get<std::size_t>();
  cfg.phi_mc_samples = j.at("phi_mc_samples").get<std::uint64_t>();
  cfg.census = j.at("census").get<bool>();
  cfg.census_depth = j.at("census_depth").get<std::uint32_t>();
  cfg.census_vertices = j.at("census_vertices").get<std::size_t>();
  cfg.census_tree_samples = j.at("census_tree_samples").get<std::uint64_t>();
  cfg.threads = j.at("threads").get<unsigned>();
  cfg.record_timing = j.at("record_timing").get<bool>();
  cfg.out = j.at("out").get<std::string>();
  cfg.trace_csv = j.at("trace_csv").get<std::string>();
  return cfg;
}

}  // namespace pbis
