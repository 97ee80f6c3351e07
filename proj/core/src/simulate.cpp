#include "acsel/simulate.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "acsel/csv.hpp"
#include "acsel/errors.hpp"

namespace acsel {

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("scenario: cannot parse number '" + text + "' for " +
                     what);
  }
}

int parse_int(const std::string& text, const std::string& what) {
  const double v = parse_double(text, what);
  const int i = static_cast<int>(std::llround(v));
  if (std::abs(v - i) > 1e-9) {
    throw ParseError("scenario: expected an integer for " + what);
  }
  return i;
}

Eigen::VectorXd parse_beta(const std::string& text, int n_vars) {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(n_vars);
  const std::string value = trim(text);
  if (value.rfind("first_q=", 0) == 0) {
    const int q = parse_int(value.substr(8), "beta first_q");
    if (q < 0 || q > n_vars) {
      throw ParseError("scenario: first_q out of range");
    }
    beta.head(q).setOnes();
    return beta;
  }
  std::stringstream ss(value);
  std::string item;
  int k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= n_vars) throw ParseError("scenario: beta list longer than n_vars");
    beta[k++] = parse_double(trim(item), "beta entry");
  }
  if (k != n_vars) {
    throw ParseError("scenario: beta list has " + std::to_string(k) +
                     " entries, expected " + std::to_string(n_vars));
  }
  return beta;
}

}  // namespace

std::vector<int> SimScenario::support() const {
  std::vector<int> s;
  for (int j = 0; j < n_vars; ++j) {
    if (beta[j] != 0.0) s.push_back(j);
  }
  return s;
}

std::uint64_t SimScenario::content_tag() const {
  std::ostringstream os;
  os << n_obs << '|' << n_vars << '|' << snr << '|'
     << static_cast<int>(cov.kind) << '|' << cov.rho << '|'
     << cov.external_path << '|';
  for (const auto& [i, j, v] : cov.entries) os << i << ',' << j << ',' << v << ';';
  os << '|';
  for (int k = 0; k < n_vars; ++k) os << beta[k] << ',';
  return fnv1a(os.str());
}

SimScenario parse_scenario(const std::string& text, const std::string& name) {
  SimScenario s;
  s.name = name;
  std::string beta_text = "first_q=0";
  bool have_n = false, have_p = false;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError("scenario line " + std::to_string(line_no) +
                       ": expected key=value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key == "name") {
      s.name = value;
    } else if (key == "n_obs") {
      s.n_obs = parse_int(value, key);
      have_n = true;
    } else if (key == "n_vars") {
      s.n_vars = parse_int(value, key);
      have_p = true;
    } else if (key == "beta") {
      beta_text = value;
    } else if (key == "covariance") {
      if (value == "identity") {
        s.cov.kind = CovarianceSpec::Kind::identity;
      } else if (value == "constant") {
        s.cov.kind = CovarianceSpec::Kind::constant;
      } else if (value == "external") {
        s.cov.kind = CovarianceSpec::Kind::external;
      } else {
        throw ParseError("scenario line " + std::to_string(line_no) +
                         ": unknown covariance kind '" + value + "'");
      }
    } else if (key == "rho") {
      s.cov.rho = parse_double(value, key);
    } else if (key == "cov_entry") {
      std::stringstream ss(value);
      std::string i_s, j_s, v_s;
      if (!std::getline(ss, i_s, ',') || !std::getline(ss, j_s, ',') ||
          !std::getline(ss, v_s)) {
        throw ParseError("scenario line " + std::to_string(line_no) +
                         ": cov_entry expects i,j,value");
      }
      s.cov.entries.emplace_back(parse_int(trim(i_s), "cov_entry i") - 1,
                                 parse_int(trim(j_s), "cov_entry j") - 1,
                                 parse_double(trim(v_s), "cov_entry value"));
    } else if (key == "snr") {
      s.snr = parse_double(value, key);
    } else if (key == "replicates") {
      s.replicates = parse_int(value, key);
    } else if (key == "external_matrix") {
      s.cov.external_path = value;
      s.cov.kind = CovarianceSpec::Kind::external;
    } else {
      throw ParseError("scenario line " + std::to_string(line_no) +
                       ": unknown key '" + key + "'");
    }
  }

  if (!have_p) throw ParseError("scenario: missing n_vars");
  if (!have_n && s.cov.kind != CovarianceSpec::Kind::external) {
    throw ParseError("scenario: missing n_obs");
  }
  if (s.snr <= 0.0) throw ParseError("scenario: snr must be positive");
  if (s.replicates < 1) throw ParseError("scenario: replicates must be >= 1");
  s.beta = parse_beta(beta_text, s.n_vars);

  for (const auto& [i, j, v] : s.cov.entries) {
    if (i < 0 || j < 0 || i >= s.n_vars || j >= s.n_vars || i == j) {
      throw ParseError("scenario: cov_entry index out of range");
    }
    if (std::abs(v) > 1.0) {
      throw ParseError("scenario: cov_entry magnitude above 1");
    }
  }
  return s;
}

SimScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  const auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos) name = name.substr(0, dot);
  return parse_scenario(buf.str(), name);
}

ExternalMatrix load_external_matrix(const std::string& path) {
  const CsvTable table = read_csv_table(path);
  ExternalMatrix out;
  out.values = table.values;
  out.names = table.names;
  return out;
}

double noise_variance_for_snr(const Eigen::VectorXd& signal, double snr) {
  if (!(snr > 0.0)) throw ParseError("snr must be positive");
  const Eigen::Index n = signal.size();
  if (n < 2 || signal.norm() <= 0.0) {
    throw ZeroSignalError("noise_variance_for_snr: signal is zero");
  }
  const double mean = signal.mean();
  const double var =
      (signal.array() - mean).square().sum() / static_cast<double>(n - 1);
  if (var < 1e-300) {
    throw ZeroSignalError("noise_variance_for_snr: signal variance is zero");
  }
  return var / snr;
}

ScenarioSampler::ScenarioSampler(const SimScenario& s) : scenario_(s) {
  if (s.cov.kind == CovarianceSpec::Kind::external) {
    if (s.cov.external_path.empty()) {
      throw ExternalMatrixMissingError(
          "scenario '" + s.name + "' needs an external_matrix path");
    }
    external_ = load_external_matrix(s.cov.external_path);
    if (external_->values.cols() < s.n_vars) {
      throw ParseError("external matrix has fewer columns than n_vars");
    }
    scenario_.n_obs = static_cast<int>(external_->values.rows());
    return;
  }

  const int p = s.n_vars;
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(p, p);
  if (s.cov.kind == CovarianceSpec::Kind::constant) {
    sigma.setConstant(s.cov.rho);
    sigma.diagonal().setOnes();
  }
  for (const auto& [i, j, v] : s.cov.entries) {
    sigma(i, j) = v;
    sigma(j, i) = v;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw NotPsdError("scenario '" + s.name +
                      "': covariance is not positive definite");
  }
  chol_ = llt.matrixL();
}

Dataset ScenarioSampler::generate(RngStream& rng) const {
  const SimScenario& s = scenario_;
  Dataset d;
  d.names.resize(s.n_vars);

  if (s.cov.kind == CovarianceSpec::Kind::external) {
    const auto& m = external_->values;
    const int total = static_cast<int>(m.cols());
    // Sample n_vars distinct columns; the first q sampled carry the signal.
    std::vector<int> cols(total);
    for (int i = 0; i < total; ++i) cols[i] = i;
    for (int i = 0; i < s.n_vars; ++i) {
      const int j = i + rng.uniform_int(total - i);
      std::swap(cols[i], cols[j]);
    }
    d.x.resize(m.rows(), s.n_vars);
    for (int j = 0; j < s.n_vars; ++j) {
      d.x.col(j) = m.col(cols[j]);
      d.names[j] = cols[j] < static_cast<int>(external_->names.size())
                       ? external_->names[cols[j]]
                       : "col" + std::to_string(cols[j] + 1);
    }
  } else {
    d.x.resize(s.n_obs, s.n_vars);
    Eigen::VectorXd row(s.n_vars);
    for (int i = 0; i < s.n_obs; ++i) {
      rng.fill_normals(row);
      d.x.row(i) = (chol_ * row).transpose();
    }
    for (int j = 0; j < s.n_vars; ++j) d.names[j] = "x" + std::to_string(j + 1);
  }

  const Eigen::VectorXd signal = d.x * s.beta;
  const double sigma2 = noise_variance_for_snr(signal, s.snr);
  Eigen::VectorXd noise(d.x.rows());
  rng.fill_normals(noise);
  d.y = signal + std::sqrt(sigma2) * noise;
  return d;
}

Dataset ScenarioSampler::replicate(std::uint64_t master_seed, int r) const {
  RngStream rng(derive_seed(master_seed, scenario_.content_tag(),
                            static_cast<std::uint64_t>(r)));
  return generate(rng);
}

Dataset gen_scenario(const SimScenario& s, RngStream& rng) {
  return ScenarioSampler(s).generate(rng);
}

}  // namespace acsel
