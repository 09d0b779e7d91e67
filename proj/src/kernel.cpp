#include "sln/kernel.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sln {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view token, std::string_view context) {
  T value{};
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw std::invalid_argument("bad number '" + std::string(token) + "' in kernel spec '" +
                                std::string(context) + "'");
  return value;
}

void check_dims(const VectorRef& x, const VectorRef& z) {
  if (x.size() != z.size())
    throw std::invalid_argument("kernel arguments have different dimensions (" +
                                std::to_string(x.size()) + " vs " + std::to_string(z.size()) +
                                ")");
}

double rbf_value(double sigma, const VectorRef& x, const VectorRef& z) {
  return std::exp(-(x - z).squaredNorm() / (2.0 * sigma * sigma));
}

}  // namespace

KernelSpec KernelSpec::rbf(double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("rbf bandwidth must be positive");
  KernelSpec spec;
  spec.kind = Kind::rbf;
  spec.sigma = sigma;
  return spec;
}

KernelSpec KernelSpec::rff(double sigma, int dim, std::uint64_t seed) {
  if (!(sigma > 0)) throw std::invalid_argument("rff bandwidth must be positive");
  if (dim < 2 || dim % 2 != 0)
    throw std::invalid_argument("rff dimension must be a positive even number, got " +
                                std::to_string(dim));
  KernelSpec spec;
  spec.kind = Kind::rff;
  spec.sigma = sigma;
  spec.dim = dim;
  spec.seed = seed;
  return spec;
}

KernelSpec KernelSpec::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts[0] == "linear" && parts.size() == 1) return linear();
  if (parts[0] == "rbf" && parts.size() == 2) return rbf(parse_number<double>(parts[1], text));
  if (parts[0] == "rff" && parts.size() == 4)
    return rff(parse_number<double>(parts[1], text), parse_number<int>(parts[2], text),
               parse_number<std::uint64_t>(parts[3], text));
  throw std::invalid_argument("unknown kernel spec '" + std::string(text) + "'");
}

std::string KernelSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::linear:
      out << "linear";
      break;
    case Kind::rbf:
      out << "rbf:" << sigma;
      break;
    case Kind::rff:
      out << "rff:" << sigma << ':' << dim << ':' << seed;
      break;
  }
  return out.str();
}

FeatureMap::FeatureMap(const KernelSpec& spec, int input_dim)
    : spec_(spec), input_dim_(input_dim), output_dim_(input_dim) {
  if (input_dim < 1) throw std::invalid_argument("feature map input dimension must be >= 1");
  switch (spec.kind) {
    case KernelSpec::Kind::linear:
      break;
    case KernelSpec::Kind::rbf:
      throw std::invalid_argument("the rbf kernel has no explicit finite feature map");
    case KernelSpec::Kind::rff: {
      if (spec.dim < 2 || spec.dim % 2 != 0)
        throw std::invalid_argument("rff dimension must be a positive even number");
      output_dim_ = spec.dim;
      std::mt19937_64 rng(spec.seed);
      std::normal_distribution<double> normal(0.0, 1.0 / spec.sigma);
      frequencies_.resize(spec.dim / 2, input_dim);
      // Row-major draw order so the map depends only on (seed, dim, input_dim).
      for (Eigen::Index i = 0; i < frequencies_.rows(); ++i)
        for (Eigen::Index j = 0; j < frequencies_.cols(); ++j) frequencies_(i, j) = normal(rng);
      break;
    }
  }
}

Vector FeatureMap::apply(const VectorRef& x) const {
  if (x.size() != input_dim_)
    throw std::invalid_argument("feature map expects dimension " + std::to_string(input_dim_) +
                                ", got " + std::to_string(x.size()));
  if (spec_.kind == KernelSpec::Kind::linear) return x;
  const Vector proj = frequencies_ * x;
  const double scale = std::sqrt(2.0 / output_dim_);
  Vector out(output_dim_);
  for (Eigen::Index i = 0; i < proj.size(); ++i) {
    out(2 * i) = scale * std::cos(proj(i));
    out(2 * i + 1) = scale * std::sin(proj(i));
  }
  return out;
}

Matrix FeatureMap::apply_rows(const Matrix& rows) const {
  if (rows.cols() != input_dim_)
    throw std::invalid_argument("feature map expects dimension " + std::to_string(input_dim_) +
                                ", got " + std::to_string(rows.cols()));
  if (spec_.kind == KernelSpec::Kind::linear) return rows;
  const Matrix proj = rows * frequencies_.transpose();
  const double scale = std::sqrt(2.0 / output_dim_);
  Matrix out(rows.rows(), output_dim_);
  for (Eigen::Index r = 0; r < proj.rows(); ++r)
    for (Eigen::Index i = 0; i < proj.cols(); ++i) {
      out(r, 2 * i) = scale * std::cos(proj(r, i));
      out(r, 2 * i + 1) = scale * std::sin(proj(r, i));
    }
  return out;
}

FeatureMap rff_build(double sigma, int dim, int input_dim, std::uint64_t seed) {
  return FeatureMap(KernelSpec::rff(sigma, dim, seed), input_dim);
}

double kernel_eval(const KernelSpec& spec, const VectorRef& x, const VectorRef& z) {
  check_dims(x, z);
  switch (spec.kind) {
    case KernelSpec::Kind::linear:
      return x.dot(z);
    case KernelSpec::Kind::rbf:
      return rbf_value(spec.sigma, x, z);
    case KernelSpec::Kind::rff: {
      const FeatureMap map(spec, static_cast<int>(x.size()));
      return map.apply(x).dot(map.apply(z));
    }
  }
  return 0.0;
}

Matrix gram(const KernelSpec& spec, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("gram: point sets have different dimensions");
  switch (spec.kind) {
    case KernelSpec::Kind::linear:
      return a * b.transpose();
    case KernelSpec::Kind::rbf: {
      Matrix k(a.rows(), b.rows());
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.rows(); ++j)
          k(i, j) = rbf_value(spec.sigma, a.row(i).transpose(), b.row(j).transpose());
      return k;
    }
    case KernelSpec::Kind::rff: {
      const FeatureMap map(spec, static_cast<int>(a.cols()));
      return map.apply_rows(a) * map.apply_rows(b).transpose();
    }
  }
  return {};
}

double mmd(const Matrix& positives, const Matrix& negatives, const KernelSpec& spec) {
  if (positives.rows() == 0 || negatives.rows() == 0)
    throw std::invalid_argument("mmd needs two non-empty samples");
  const double pp = gram(spec, positives, positives).mean();
  const double pq = gram(spec, positives, negatives).mean();
  const double qq = gram(spec, negatives, negatives).mean();
  return std::sqrt(std::max(0.0, pp - 2.0 * pq + qq));
}

std::optional<double> nadaraya_ratio(const Matrix& positives, const Matrix& negatives, double pi,
                                     const KernelSpec& spec, const VectorRef& x) {
  if (!(pi > 0.0 && pi < 1.0)) throw std::invalid_argument("class prior must lie in (0, 1)");
  if (positives.rows() == 0 || negatives.rows() == 0)
    throw std::invalid_argument("nadaraya_ratio needs two non-empty samples");
  const Matrix probe = x.transpose();
  const double pos = gram(spec, positives, probe).mean();
  const double neg = gram(spec, negatives, probe).mean();
  if (neg == 0.0) return std::nullopt;
  return (pi / (1.0 - pi)) * pos / neg;
}

}  // namespace sln
