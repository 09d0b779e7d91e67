#include "sln/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "sln/random.hpp"

namespace sln {

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

void SampleDataset::validate() const {
  if (instances.rows() < 1) throw std::invalid_argument("sample dataset is empty");
  if (static_cast<Eigen::Index>(labels.size()) != instances.rows())
    throw std::invalid_argument("sample dataset has " + std::to_string(instances.rows()) +
                                " instances but " + std::to_string(labels.size()) + " labels");
  if (!instances.allFinite()) throw std::invalid_argument("sample dataset has non-finite entries");
  for (int y : labels)
    if (y != 1 && y != -1) throw std::invalid_argument("labels must be -1 or +1");
}

namespace {

Matrix select_rows(const Matrix& rows, const std::vector<int>& labels, int wanted) {
  const auto count = std::count(labels.begin(), labels.end(), wanted);
  Matrix out(count, rows.cols());
  Eigen::Index r = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == wanted) out.row(r++) = rows.row(static_cast<Eigen::Index>(i));
  return out;
}

}  // namespace

Matrix SampleDataset::positives() const { return select_rows(instances, labels, 1); }
Matrix SampleDataset::negatives() const { return select_rows(instances, labels, -1); }

void PopulationDataset::validate() const {
  if (support.rows() < 1) throw std::invalid_argument("population has empty support");
  if (mass.size() != support.rows() || eta.size() != support.rows())
    throw std::invalid_argument("population support, mass and eta sizes differ");
  if (!support.allFinite()) throw std::invalid_argument("population support is not finite");
  if ((mass.array() < 0).any() || !mass.allFinite())
    throw std::invalid_argument("population mass must be non-negative");
  if (std::abs(mass.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("population mass must sum to 1");
  if ((eta.array() < 0).any() || (eta.array() > 1).any() || !eta.allFinite())
    throw std::invalid_argument("population eta must lie in [0, 1]");
}

PopulationDataset to_population(const SampleDataset& sample) {
  sample.validate();
  const auto n = sample.size();
  PopulationDataset pop;
  pop.support = sample.instances;
  pop.mass = Vector::Constant(n, 1.0 / static_cast<double>(n));
  pop.eta.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) pop.eta(i) = sample.labels[i] == 1 ? 1.0 : 0.0;
  return pop;
}

namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::domain_error("Long-Servedio gamma must lie in (0, 1)");
}

}  // namespace

PopulationDataset long_servedio_population(double gamma) {
  check_gamma(gamma);
  PopulationDataset pop;
  pop.support.resize(3, 2);
  pop.support << 1.0, 0.0, gamma, 5.0 * gamma, gamma, -gamma;
  pop.mass.resize(3);
  pop.mass << 0.25, 0.25, 0.5;
  pop.eta = Vector::Ones(3);
  return pop;
}

PopulationDataset long_servedio_four_point(double gamma) {
  check_gamma(gamma);
  PopulationDataset pop;
  pop.support.resize(4, 2);
  pop.support << 1.0, 0.0, gamma, 5.0 * gamma, gamma, -gamma, gamma, -gamma;
  pop.mass = Vector::Constant(4, 0.25);
  pop.eta = Vector::Ones(4);
  return pop;
}

PopulationDataset unhinged_failure_population() {
  PopulationDataset pop;
  pop.support.resize(3, 2);
  pop.support << 1.0, 2.0, 1.0, -4.0, -1.0, 1.0;
  pop.mass = Vector::Constant(3, 1.0 / 3.0);
  pop.eta.resize(3);
  pop.eta << 1.0, 1.0, 0.0;
  return pop;
}

SampleDataset sample_from_population(const PopulationDataset& pop, Eigen::Index n,
                                     std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample size must be >= 1");
  pop.validate();
  std::vector<double> cumulative(static_cast<std::size_t>(pop.size()));
  std::partial_sum(pop.mass.data(), pop.mass.data() + pop.size(), cumulative.begin());

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SampleDataset out;
  out.instances.resize(n, pop.dim());
  out.labels.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = unit(rng) * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    const auto idx = static_cast<Eigen::Index>(it - cumulative.begin());
    out.instances.row(i) = pop.support.row(idx);
    out.labels[static_cast<std::size_t>(i)] = unit(rng) < pop.eta(idx) ? 1 : -1;
  }
  return out;
}

int mease_label(const VectorRef& x) {
  if (x.size() < 5) throw std::invalid_argument("mease instances have at least 5 coordinates");
  // Ties at exactly 2.5 go to the negative class.
  return x.head(5).sum() > 2.5 ? 1 : -1;
}

SampleDataset mease_sample(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample size must be >= 1");
  constexpr int kDim = 20;
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SampleDataset out;
  out.instances.resize(n, kDim);
  out.labels.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < kDim; ++j) out.instances(i, j) = unit(rng);
    out.labels[static_cast<std::size_t>(i)] = mease_label(out.instances.row(i).transpose());
  }
  return out;
}

SampleDataset gaussian_blobs(Eigen::Index n, int dim, double separation, std::uint64_t seed) {
  if (n < 1 || dim < 1) throw std::invalid_argument("gaussian_blobs needs n >= 1 and dim >= 1");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  SampleDataset out;
  out.instances.resize(n, dim);
  out.labels.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const int y = coin(rng) ? 1 : -1;
    out.labels[static_cast<std::size_t>(i)] = y;
    for (int j = 0; j < dim; ++j) out.instances(i, j) = normal(rng);
    out.instances(i, 0) += 0.5 * separation * y;
  }
  return out;
}

double max_row_norm(const Matrix& rows) {
  return rows.rows() == 0 ? 0.0 : rows.rowwise().norm().maxCoeff();
}

SampleDataset scale_to_radius(const SampleDataset& data, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("radius must be positive");
  const double r = max_row_norm(data.instances);
  if (r == 0.0) throw std::invalid_argument("cannot rescale an all-zero dataset");
  SampleDataset out = data;
  out.instances *= radius / r;
  return out;
}

std::pair<SampleDataset, SampleDataset> train_test_split(const SampleDataset& data,
                                                         double train_fraction,
                                                         std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  const auto n = data.size();
  auto n_train = static_cast<Eigen::Index>(std::llround(train_fraction * static_cast<double>(n)));
  n_train = std::clamp<Eigen::Index>(n_train, 1, std::max<Eigen::Index>(1, n - 1));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  // Fisher-Yates with an explicit index draw; std::shuffle is implementation-defined.
  for (std::size_t i = order.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(rng)]);
  }
  auto take = [&](std::size_t begin, std::size_t end) {
    SampleDataset part;
    part.instances.resize(static_cast<Eigen::Index>(end - begin), data.dim());
    part.labels.resize(end - begin);
    for (std::size_t k = begin; k < end; ++k) {
      part.instances.row(static_cast<Eigen::Index>(k - begin)) = data.instances.row(order[k]);
      part.labels[k - begin] = data.labels[static_cast<std::size_t>(order[k])];
    }
    return part;
  };
  return {take(0, static_cast<std::size_t>(n_train)),
          take(static_cast<std::size_t>(n_train), order.size())};
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view token, double& out) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

// Accepts {-1, +1} or {0, 1}; anything else is a parse error.
std::vector<int> normalise_labels(const std::vector<double>& raw,
                                  const std::vector<std::size_t>& lines) {
  std::set<double> seen(raw.begin(), raw.end());
  const bool has_zero = seen.count(0.0) > 0;
  std::vector<int> labels(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double y = raw[i];
    if (y == 1.0) {
      labels[i] = 1;
    } else if (y == -1.0 && !has_zero) {
      labels[i] = -1;
    } else if (y == 0.0 && seen.count(-1.0) == 0) {
      labels[i] = -1;
    } else {
      std::ostringstream msg;
      msg << "label " << y << " is not in {-1, +1} or {0, 1}";
      throw ParseError(msg.str(), lines[i]);
    }
  }
  return labels;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

SampleDataset read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> header;
  std::string header_line;
  while (std::getline(in, header_line)) {
    ++line_no;
    if (!trim(header_line).empty()) break;
  }
  if (trim(header_line).empty()) throw ParseError("empty CSV input");
  header = split_commas(header_line);
  if (header.size() < 2 || trim(header.back()) != "label")
    throw ParseError("CSV header must end with a 'label' column", line_no);
  const std::size_t d = header.size() - 1;

  std::vector<double> values;
  std::vector<double> raw_labels;
  std::vector<std::size_t> label_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " columns, got " +
                           std::to_string(cells.size()),
                       line_no);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      double x = 0;
      if (!parse_double(cells[j], x))
        throw ParseError("cannot parse '" + std::string(trim(cells[j])) + "' as a number",
                         line_no);
      if (j < d)
        values.push_back(x);
      else
        raw_labels.push_back(x);
    }
    label_lines.push_back(line_no);
  }
  if (raw_labels.empty()) throw ParseError("CSV input has a header but no rows");

  SampleDataset out;
  out.instances = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                 Eigen::RowMajor>>(
      values.data(), static_cast<Eigen::Index>(raw_labels.size()), static_cast<Eigen::Index>(d));
  out.labels = normalise_labels(raw_labels, label_lines);
  return out;
}

SampleDataset load_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_csv(in);
}

namespace {

void append_number(std::string& out, double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  out.append(buf, ptr);
}

}  // namespace

void write_csv(const SampleDataset& data, std::ostream& out) {
  std::string text;
  for (Eigen::Index j = 0; j < data.dim(); ++j) text += "f" + std::to_string(j) + ",";
  text += "label\n";
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    for (Eigen::Index j = 0; j < data.dim(); ++j) {
      append_number(text, data.instances(i, j));
      text += ',';
    }
    text += data.labels[static_cast<std::size_t>(i)] == 1 ? "1\n" : "-1\n";
  }
  out << text;
}

void save_csv(const SampleDataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  write_csv(data, out);
}

SampleDataset read_libsvm(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::map<long, double>> rows;
  std::vector<double> raw_labels;
  std::vector<std::size_t> label_lines;
  long max_index = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos)
      view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;

    std::istringstream tokens{std::string(view)};
    std::string token;
    tokens >> token;
    double y = 0;
    if (!parse_double(token, y)) throw ParseError("cannot parse label '" + token + "'", line_no);
    std::map<long, double> row;
    long previous = 0;
    while (tokens >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos)
        throw ParseError("expected index:value, got '" + token + "'", line_no);
      long index = 0;
      const auto* begin = token.data();
      auto [ptr, ec] = std::from_chars(begin, begin + colon, index);
      if (ec != std::errc() || ptr != begin + colon || index < 1)
        throw ParseError("bad feature index in '" + token + "'", line_no);
      if (index <= previous)
        throw ParseError("feature indices must be strictly increasing", line_no);
      double value = 0;
      if (!parse_double(std::string_view(token).substr(colon + 1), value))
        throw ParseError("bad feature value in '" + token + "'", line_no);
      row[index] = value;
      previous = index;
      max_index = std::max(max_index, index);
    }
    rows.push_back(std::move(row));
    raw_labels.push_back(y);
    label_lines.push_back(line_no);
  }
  if (rows.empty()) throw ParseError("empty LIBSVM input");
  if (max_index == 0) max_index = 1;

  SampleDataset out;
  out.instances = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), max_index);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [index, value] : rows[i])
      out.instances(static_cast<Eigen::Index>(i), index - 1) = value;
  out.labels = normalise_labels(raw_labels, label_lines);
  return out;
}

SampleDataset load_libsvm(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_libsvm(in);
}

nlohmann::json population_to_json(const PopulationDataset& pop) {
  nlohmann::json support = nlohmann::json::array();
  for (Eigen::Index i = 0; i < pop.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < pop.dim(); ++j) row.push_back(pop.support(i, j));
    support.push_back(std::move(row));
  }
  return {{"support", support},
          {"mass", std::vector<double>(pop.mass.data(), pop.mass.data() + pop.size())},
          {"eta", std::vector<double>(pop.eta.data(), pop.eta.data() + pop.size())}};
}

PopulationDataset population_from_json(const nlohmann::json& doc) {
  try {
    const auto& support = doc.at("support");
    const auto mass = doc.at("mass").get<std::vector<double>>();
    const auto eta = doc.at("eta").get<std::vector<double>>();
    PopulationDataset pop;
    const auto m = static_cast<Eigen::Index>(support.size());
    const auto d = m > 0 ? static_cast<Eigen::Index>(support.at(0).size()) : 0;
    pop.support.resize(m, d);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto row = support.at(static_cast<std::size_t>(i)).get<std::vector<double>>();
      if (static_cast<Eigen::Index>(row.size()) != d)
        throw ParseError("population support rows have different lengths");
      for (Eigen::Index j = 0; j < d; ++j) pop.support(i, j) = row[static_cast<std::size_t>(j)];
    }
    pop.mass = Eigen::Map<const Vector>(mass.data(), static_cast<Eigen::Index>(mass.size()));
    pop.eta = Eigen::Map<const Vector>(eta.data(), static_cast<Eigen::Index>(eta.size()));
    pop.validate();
    return pop;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad population document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad population document: ") + e.what());
  }
}

Standardizer Standardizer::fit(const SampleDataset& train) {
  train.validate();
  Standardizer s;
  s.mean = train.instances.colwise().mean().transpose();
  const Matrix centred = train.instances.rowwise() - s.mean.transpose();
  s.scale = (centred.array().square().colwise().mean().sqrt()).transpose();
  // Near-constant features keep unit scale; centring already sends them to ~0.
  for (Eigen::Index j = 0; j < s.scale.size(); ++j)
    if (s.scale(j) < 1e-12) s.scale(j) = 1.0;
  return s;
}

SampleDataset Standardizer::apply(const SampleDataset& data) const {
  if (data.dim() != mean.size())
    throw std::invalid_argument("standardizer fitted on a different feature dimension");
  SampleDataset out = data;
  out.instances = ((data.instances.rowwise() - mean.transpose()).array().rowwise() /
                   scale.transpose().array())
                      .matrix();
  return out;
}

nlohmann::json Standardizer::to_json() const {
  return {{"mean", std::vector<double>(mean.data(), mean.data() + mean.size())},
          {"scale", std::vector<double>(scale.data(), scale.data() + scale.size())}};
}

Standardizer Standardizer::from_json(const nlohmann::json& doc) {
  const auto m = doc.at("mean").get<std::vector<double>>();
  const auto s = doc.at("scale").get<std::vector<double>>();
  if (m.size() != s.size()) throw ParseError("standardizer mean/scale lengths differ");
  Standardizer out;
  out.mean = Eigen::Map<const Vector>(m.data(), static_cast<Eigen::Index>(m.size()));
  out.scale = Eigen::Map<const Vector>(s.data(), static_cast<Eigen::Index>(s.size()));
  return out;
}

StandardizedData standardize(const SampleDataset& train, const std::vector<SampleDataset>& others) {
  StandardizedData out;
  out.transform = Standardizer::fit(train);
  out.train = out.transform.apply(train);
  out.others.reserve(others.size());
  for (const auto& d : others) out.others.push_back(out.transform.apply(d));
  return out;
}

}  // namespace sln
