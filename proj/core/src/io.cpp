#include "lpvident/io.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "json.hpp"

#include "lpvident/errors.hpp"

namespace lpvident {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double(const std::string& field, const std::filesystem::path& path,
                    std::size_t line_no) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw IoError(path.string() + ":" + std::to_string(line_no) +
                  ": cannot parse '" + field + "' as a number");
  }
  return v;
}

long parse_index(const std::string& field, const std::filesystem::path& path,
                 std::size_t line_no) {
  long v = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw IoError(path.string() + ":" + std::to_string(line_no) +
                  ": cannot parse '" + field + "' as a row index");
  }
  return v;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

Dataset read_dataset_csv(const std::filesystem::path& path, double ts) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());

  std::string line;
  if (!std::getline(f, line)) {
    throw IoError(path.string() + ": empty file, expected a header");
  }
  strip_cr(line);
  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 4 || header[0] != "k" || header[1] != "u" ||
      header[2] != "y") {
    throw IoError(path.string() +
                  ": header must be k,u,y,p_1,...,p_np; got '" + line + "'");
  }
  const std::size_t n_p = header.size() - 3;
  for (std::size_t c = 0; c < n_p; ++c) {
    if (header[c + 3] != "p_" + std::to_string(c + 1)) {
      throw IoError(path.string() + ": scheduling column " +
                    std::to_string(c + 1) + " must be named p_" +
                    std::to_string(c + 1) + ", got '" + header[c + 3] + "'");
    }
  }

  std::vector<double> u;
  std::vector<double> y;
  std::vector<double> p_flat;
  std::size_t line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": got " +
                    std::to_string(fields.size()) + " fields, expected " +
                    std::to_string(header.size()));
    }
    const long k = parse_index(fields[0], path, line_no);
    if (k != static_cast<long>(u.size()) + 1) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": row index " + std::to_string(k) + ", expected " +
                    std::to_string(u.size() + 1));
    }
    u.push_back(parse_double(fields[1], path, line_no));
    y.push_back(parse_double(fields[2], path, line_no));
    for (std::size_t c = 0; c < n_p; ++c) {
      p_flat.push_back(parse_double(fields[c + 3], path, line_no));
    }
  }
  if (u.empty()) throw IoError(path.string() + ": no data rows");

  const Eigen::Index n = static_cast<Eigen::Index>(u.size());
  Dataset d;
  d.u = Eigen::Map<const Eigen::VectorXd>(u.data(), n);
  d.y = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  d.p = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>(
      p_flat.data(), n, static_cast<Eigen::Index>(n_p));
  d.ts = ts;
  return d;
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& d) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "k,u,y";
  for (Eigen::Index c = 0; c < d.scheduling_dim(); ++c) {
    f << ",p_" << (c + 1);
  }
  f << '\n';
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    f << (k + 1) << ',' << format_double(d.u(k)) << ','
      << format_double(d.y(k));
    for (Eigen::Index c = 0; c < d.scheduling_dim(); ++c) {
      f << ',' << format_double(d.p(k, c));
    }
    f << '\n';
  }
  f.flush();
  if (!f) throw IoError("write failed for " + path.string());
}

void save_model(const std::filesystem::path& path, const TrainedModel& m) {
  if (!m.kernel_is_rbf) {
    throw IoError("only RBF-kernel models can be serialized");
  }
  nlohmann::ordered_json j;
  j["n_x"] = m.hyper.n_x;
  j["sigma"] = m.hyper.sigma;
  j["gamma"] = m.hyper.gamma;
  j["alpha"] = to_std(m.alpha.coeffs());
  j["lambda"] = to_std(m.lambda);
  nlohmann::ordered_json training;
  training["u"] = to_std(m.data.u);
  training["y"] = to_std(m.data.y);
  std::vector<std::vector<double>> p_rows(static_cast<std::size_t>(m.data.p.rows()));
  for (Eigen::Index r = 0; r < m.data.p.rows(); ++r) {
    p_rows[static_cast<std::size_t>(r)].assign(
        m.data.p.row(r).begin(), m.data.p.row(r).end());
  }
  training["p"] = p_rows;
  training["Ts"] = m.data.ts;
  j["training"] = std::move(training);

  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << j.dump(2) << '\n';
  f.flush();
  if (!f) throw IoError("write failed for " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }

  try {
    HyperParams hyper;
    hyper.n_x = j.at("n_x").get<int>();
    hyper.sigma = j.at("sigma").get<double>();
    hyper.gamma = j.at("gamma").get<double>();
    const std::vector<double> alpha = j.at("alpha").get<std::vector<double>>();
    const std::vector<double> lambda = j.at("lambda").get<std::vector<double>>();
    const auto& training = j.at("training");
    const std::vector<double> u = training.at("u").get<std::vector<double>>();
    const std::vector<double> y = training.at("y").get<std::vector<double>>();
    const auto p_rows =
        training.at("p").get<std::vector<std::vector<double>>>();

    Dataset d;
    d.ts = training.at("Ts").get<double>();
    d.u = Eigen::Map<const Eigen::VectorXd>(
        u.data(), static_cast<Eigen::Index>(u.size()));
    d.y = Eigen::Map<const Eigen::VectorXd>(
        y.data(), static_cast<Eigen::Index>(y.size()));
    if (p_rows.size() != u.size()) {
      throw IoError(path.string() + ": training.p has " +
                    std::to_string(p_rows.size()) + " rows, expected " +
                    std::to_string(u.size()));
    }
    const std::size_t n_p = p_rows.empty() ? 0 : p_rows[0].size();
    d.p.resize(static_cast<Eigen::Index>(p_rows.size()),
               static_cast<Eigen::Index>(n_p));
    for (std::size_t r = 0; r < p_rows.size(); ++r) {
      if (p_rows[r].size() != n_p) {
        throw IoError(path.string() + ": ragged training.p rows");
      }
      for (std::size_t c = 0; c < n_p; ++c) {
        d.p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            p_rows[r][c];
      }
    }

    if (static_cast<Eigen::Index>(lambda.size()) !=
        d.y.size() - hyper.n_x) {
      throw IoError(path.string() + ": lambda has length " +
                    std::to_string(lambda.size()) + ", expected N - n_x = " +
                    std::to_string(d.y.size() - hyper.n_x));
    }
    if (static_cast<int>(alpha.size()) != hyper.n_x) {
      throw IoError(path.string() + ": alpha has order " +
                    std::to_string(alpha.size()) + ", expected n_x = " +
                    std::to_string(hyper.n_x));
    }
    validate_hyper(hyper);
    validate_dataset(d, hyper.n_x);

    return TrainedModel{
        std::move(d),
        Eigen::Map<const Eigen::VectorXd>(lambda.data(),
                                          static_cast<Eigen::Index>(lambda.size())),
        AlphaPolynomial(Eigen::Map<const Eigen::VectorXd>(
            alpha.data(), static_cast<Eigen::Index>(alpha.size()))),
        hyper,
        rbf_kernel(hyper.sigma),
        true};
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_tuning_report(const std::filesystem::path& path,
                         const TuningResult& result) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "omega,J,weight\n";
  for (const TuningResult::Entry& e : result.entries) {
    f << format_double(e.omega) << ',' << format_double(e.j) << ','
      << format_double(e.weight) << '\n';
  }
  f << "omega_star," << format_double(result.omega_star) << ",\n";
  f.flush();
  if (!f) throw IoError("write failed for " + path.string());
}

}  // namespace lpvident
