#include "ssrom/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ssrom/error.hpp"
#include "ssrom/matrix_io.hpp"

namespace ssrom {

namespace {

using boost::property_tree::ptree;

// Binds section keys to fields for both reading and writing.
class Binder {
 public:
  void bind(const std::string& key, int& v) {
    add(key, [&v](const std::string& s) { v = parse_int(s); }, [&v] { return std::to_string(v); });
  }
  void bind(const std::string& key, double& v) {
    add(key, [&v](const std::string& s) { v = io::parse_double(s); }, [&v] { return io::format_double(v); });
  }
  void bind(const std::string& key, std::uint64_t& v) {
    add(key, [&v](const std::string& s) { v = parse_u64(s); }, [&v] { return std::to_string(v); });
  }
  void bind(const std::string& key, bool& v) {
    add(key,
        [&v](const std::string& s) {
          if (s == "true") {
            v = true;
          } else if (s == "false") {
            v = false;
          } else {
            throw ConfigError("not a boolean: '" + s + "'");
          }
        },
        [&v] { return std::string(v ? "true" : "false"); });
  }
  void bind(const std::string& key, ParameterDistribution& v) {
    add(key, [&v](const std::string& s) { v = parse_parameter_distribution(s); },
        [&v] { return std::string(to_string(v)); });
  }
  void bind(const std::string& key, std::optional<int>& v) {
    add(key,
        [&v](const std::string& s) {
          if (s == "auto") {
            v.reset();
          } else {
            v = parse_int(s);
          }
        },
        [&v] { return v ? std::to_string(*v) : std::string("auto"); });
  }
  void bind(const std::string& key, std::vector<SamplerKind>& v) {
    add(key,
        [&v](const std::string& s) {
          v.clear();
          std::stringstream ss(s);
          std::string item;
          while (std::getline(ss, item, ',')) {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            if (b == std::string::npos) continue;
            try {
              v.push_back(parse_sampler_kind(item.substr(b, e - b + 1)));
            } catch (const InputError& err) {
              throw ConfigError(err.what());
            }
          }
        },
        [&v] {
          std::string out;
          for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::string(to_string(v[i]));
          return out;
        });
  }
  void bind_srom(SromSettings& s) {
    bind("n_draws", s.n_draws);
    bind("n_mc_train", s.n_mc_train);
    bind("beta_max", s.beta_max);
    bind("level", s.level);
    bind("beta", s.fixed_beta);
    bind("methods", s.methods);
  }

  void read(const std::string& section, const ptree& tree) const {
    for (const auto& [key, value] : tree) {
      const auto it = readers_.find(key);
      if (it == readers_.end()) throw ConfigError("[" + section + "] unknown key '" + key + "'");
      try {
        it->second(value.get_value<std::string>());
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw ConfigError("[" + section + "] " + key + ": " + e.what());
      }
    }
  }

  void write(std::ostream& out) const {
    for (const auto& key : order_) out << key << " = " << writers_.at(key)() << '\n';
  }

 private:
  static int parse_int(const std::string& s) {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw ConfigError("not an integer: '" + s + "'");
    return static_cast<int>(v);
  }
  static std::uint64_t parse_u64(const std::string& s) {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw ConfigError("not an unsigned integer: '" + s + "'");
    return v;
  }
  void add(const std::string& key, std::function<void(const std::string&)> reader,
           std::function<std::string()> writer) {
    order_.push_back(key);
    readers_[key] = std::move(reader);
    writers_[key] = std::move(writer);
  }

  std::vector<std::string> order_;
  std::map<std::string, std::function<void(const std::string&)>> readers_;
  std::map<std::string, std::function<std::string()>> writers_;
};

Binder static_binder(StaticBenchmarkSpec& s) {
  Binder b;
  b.bind("n", s.n);
  b.bind("n_snapshots", s.n_snapshots);
  b.bind("k", s.k);
  b.bind("distribution", s.distribution);
  b.bind("beta_a", s.beta_a);
  b.bind("beta_b", s.beta_b);
  b.bind("gaussian_mean", s.gaussian_mean);
  b.bind("gaussian_std", s.gaussian_std);
  b.bind("test_mu1", s.test_mu1);
  b.bind("test_mu2", s.test_mu2);
  b.bind("center_snapshots", s.center_snapshots);
  b.bind("seed", s.seed);
  b.bind_srom(s.srom);
  return b;
}

Binder dynamic_binder(DynamicBenchmarkSpec& s) {
  Binder b;
  b.bind("n", s.n);
  b.bind("rayleigh_beta", s.rayleigh_beta);
  b.bind("dt", s.dt);
  b.bind("n_steps", s.n_steps);
  b.bind("k", s.k);
  b.bind("snapshot_stride", s.snapshot_stride);
  b.bind("center_snapshots", s.center_snapshots);
  b.bind("unit_mass", s.unit_mass);
  b.bind("heavy_mass_factor", s.heavy_mass_factor);
  b.bind("heavy_dof", s.heavy_dof);
  b.bind("spring_stiffness", s.spring_stiffness);
  b.bind("stiffness_variation", s.stiffness_variation);
  b.bind("impulse_amplitude", s.impulse_amplitude);
  b.bind("impulse_duration", s.impulse_duration);
  b.bind("monitored_dof", s.monitored_dof);
  b.bind("random_dof", s.random_dof);
  b.bind("seed", s.seed);
  b.bind_srom(s.srom);
  return b;
}

}  // namespace

BenchmarkConfig parse_config(std::istream& in) {
  ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  BenchmarkConfig config;
  for (const auto& [section, body] : tree) {
    if (section == "static") {
      static_binder(config.static_spec).read(section, body);
    } else if (section == "dynamic") {
      dynamic_binder(config.dynamic_spec).read(section, body);
    } else {
      throw ConfigError("config: unknown section [" + section + "]");
    }
  }
  config.static_spec.validate();
  config.dynamic_spec.validate();
  return config;
}

BenchmarkConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  return parse_config(in);
}

void write_config(std::ostream& out, const BenchmarkConfig& config) {
  BenchmarkConfig copy = config;
  out << "[static]\n";
  static_binder(copy.static_spec).write(out);
  out << "\n[dynamic]\n";
  dynamic_binder(copy.dynamic_spec).write(out);
}

std::string config_to_string(const BenchmarkConfig& config) {
  std::ostringstream out;
  write_config(out, config);
  return out.str();
}

bool operator==(const SromSettings& a, const SromSettings& b) {
  return a.n_draws == b.n_draws && a.n_mc_train == b.n_mc_train && a.beta_max == b.beta_max &&
         a.level == b.level && a.fixed_beta == b.fixed_beta && a.methods == b.methods;
}

bool operator==(const StaticBenchmarkSpec& a, const StaticBenchmarkSpec& b) {
  return a.n == b.n && a.n_snapshots == b.n_snapshots && a.k == b.k && a.beta_a == b.beta_a &&
         a.beta_b == b.beta_b && a.distribution == b.distribution && a.gaussian_mean == b.gaussian_mean &&
         a.gaussian_std == b.gaussian_std && a.test_mu1 == b.test_mu1 && a.test_mu2 == b.test_mu2 &&
         a.center_snapshots == b.center_snapshots && a.seed == b.seed && a.srom == b.srom;
}

bool operator==(const DynamicBenchmarkSpec& a, const DynamicBenchmarkSpec& b) {
  return a.n == b.n && a.rayleigh_beta == b.rayleigh_beta && a.dt == b.dt && a.n_steps == b.n_steps &&
         a.k == b.k && a.snapshot_stride == b.snapshot_stride &&
         a.center_snapshots == b.center_snapshots && a.unit_mass == b.unit_mass &&
         a.heavy_mass_factor == b.heavy_mass_factor && a.heavy_dof == b.heavy_dof &&
         a.spring_stiffness == b.spring_stiffness && a.stiffness_variation == b.stiffness_variation &&
         a.impulse_amplitude == b.impulse_amplitude && a.impulse_duration == b.impulse_duration &&
         a.monitored_dof == b.monitored_dof && a.random_dof == b.random_dof && a.seed == b.seed &&
         a.srom == b.srom;
}

}  // namespace ssrom
