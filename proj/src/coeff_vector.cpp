#include "waring/coeff_vector.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>

#include "waring/digitcore.hpp"
#include "waring/errors.hpp"
#include "waring/ntt.hpp"
#include "waring/parallel.hpp"

namespace waring {

std::size_t CoeffVector::nonzeros() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs.begin(), coeffs.end(), [](i128 c) { return c != 0; }));
}

void require_table_size(std::uint64_t cap, const std::string& what) {
  if (cap >= kMaxCoefficients)
    throw ResourceLimit(what + ": table of " + std::to_string(cap) +
                        " + 1 coefficients exceeds the limit of " +
                        std::to_string(kMaxCoefficients));
}

CoeffVector delta(std::uint64_t cap) {
  require_table_size(cap, "delta");
  CoeffVector out;
  out.coeffs.assign(cap + 1, 0);
  out.coeffs[0] = 1;
  out.meta.label = "delta";
  return out;
}

std::uint64_t root_floor(std::uint64_t N, unsigned n) {
  if (n == 0) throw std::invalid_argument("root_floor: n must be >= 1");
  if (n == 1) return N;
  auto fits = [&](std::uint64_t x) {
    u128 p = 1;
    for (unsigned i = 0; i < n; ++i) {
      p *= x;
      if (p > N) return false;
    }
    return true;
  };
  auto guess = static_cast<std::uint64_t>(std::pow(static_cast<double>(N), 1.0 / n));
  while (guess > 0 && !fits(guess)) --guess;
  while (fits(guess + 1)) ++guess;
  return guess;
}

BaseVectors build_base_vectors(std::uint64_t P, unsigned n, std::uint64_t cap) {
  if (n == 0) throw std::invalid_argument("build_base_vectors: n must be >= 1");
  require_table_size(cap, "build_base_vectors");
  BaseVectors out;
  auto init = [&](CoeffVector& v, CoeffKind kind, const char* label) {
    v.coeffs.assign(cap + 1, 0);
    v.kind = kind;
    v.meta = {P, n, label};
  };
  init(out.A, CoeffKind::Unsigned, "A");
  init(out.E, CoeffKind::Signed, "E");
  init(out.G0, CoeffKind::Unsigned, "G0");
  init(out.G1, CoeffKind::Unsigned, "G1");
  for (std::uint64_t x = 1; x <= P; ++x) {
    u128 value = 0;
    try {
      value = checked_pow(x, n);
    } catch (const std::overflow_error&) {
      break;
    }
    if (value > cap) break;
    const auto v = static_cast<std::size_t>(value);
    out.A.coeffs[v] += 1;
    const int e = epsilon_value(x);
    out.E.coeffs[v] += e;
    (e == 1 ? out.G0 : out.G1).coeffs[v] += 1;
  }
  return out;
}

namespace {

u128 magnitude(i128 v) { return v < 0 ? static_cast<u128>(0) - static_cast<u128>(v) : static_cast<u128>(v); }

u128 sat_add(u128 a, u128 b) {
  u128 r;
  return __builtin_add_overflow(a, b, &r) ? ~static_cast<u128>(0) : r;
}

u128 sat_mul(u128 a, u128 b) {
  u128 r;
  return __builtin_mul_overflow(a, b, &r) ? ~static_cast<u128>(0) : r;
}

struct Profile {
  u128 l1 = 0;        // sum |c|
  u128 max_abs = 0;
  std::size_t nonzeros = 0;
  std::size_t last = 0;  // highest nonzero index + 1
};

Profile profile(std::span<const i128> c) {
  Profile p;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const u128 m = magnitude(c[i]);
    p.l1 = sat_add(p.l1, m);
    p.max_abs = std::max(p.max_abs, m);
    ++p.nonzeros;
    p.last = i + 1;
  }
  return p;
}

std::vector<i128> schoolbook(std::span<const i128> u, std::span<const i128> w,
                             std::size_t out_len, unsigned threads) {
  std::vector<std::pair<std::size_t, i128>> sparse_u;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0) sparse_u.emplace_back(i, u[i]);
  std::vector<i128> out(out_len, 0);
  // each worker owns a contiguous block of output indices
  parallel_for(out_len, threads, [&](std::size_t begin, std::size_t end) {
    for (const auto& [i, ui] : sparse_u) {
      if (i >= end) break;
      const std::size_t lo = begin > i ? begin - i : 0;
      const std::size_t hi = std::min(w.size(), end - i);
      for (std::size_t j = lo; j < hi; ++j) out[i + j] += ui * w[j];
    }
  });
  return out;
}

}  // namespace

CoeffVector convolve(const CoeffVector& u, const CoeffVector& w, std::uint64_t cap,
                     const ConvolutionOptions& options) {
  require_table_size(cap, "convolve");
  const auto pu = profile(u.coeffs);
  const auto pw = profile(w.coeffs);
  const u128 bound = std::min(sat_mul(pu.l1, pw.max_abs), sat_mul(pw.l1, pu.max_abs));
  if (bound >> 125 != 0)
    throw std::overflow_error(
        "convolve: coefficients may exceed 2^125 and overflow 128-bit arithmetic; "
        "big-integer mode required");

  CoeffVector out;
  out.kind = (u.kind == CoeffKind::Signed || w.kind == CoeffKind::Signed) ? CoeffKind::Signed
                                                                          : CoeffKind::Unsigned;
  out.meta = {u.meta.P, u.meta.n, "(" + u.meta.label + ")*(" + w.meta.label + ")"};
  const std::size_t out_len = cap + 1;
  if (pu.nonzeros == 0 || pw.nonzeros == 0) {
    out.coeffs.assign(out_len, 0);
    return out;
  }

  // trailing zeros do not take part in the product
  const std::span<const i128> su(u.coeffs.data(), std::min<std::size_t>(pu.last, out_len));
  const std::span<const i128> sw(w.coeffs.data(), std::min<std::size_t>(pw.last, out_len));

  ConvolutionStrategy strategy = options.strategy;
  if (strategy == ConvolutionStrategy::Auto) {
    const double direct = static_cast<double>(std::min(pu.nonzeros * sw.size(), pw.nonzeros * su.size()));
    const double len = static_cast<double>(std::bit_ceil(su.size() + sw.size() - 1));
    const double fast = 3.0 * static_cast<double>(ntt::primes_needed(bound)) * len * std::log2(len) + 4 * len;
    strategy = direct <= fast ? ConvolutionStrategy::Schoolbook : ConvolutionStrategy::Ntt;
  }

  if (strategy == ConvolutionStrategy::Schoolbook) {
    // iterate over the sparser operand
    if (pu.nonzeros <= pw.nonzeros)
      out.coeffs = schoolbook(su, sw, out_len, options.threads);
    else
      out.coeffs = schoolbook(sw, su, out_len, options.threads);
  } else {
    out.coeffs = ntt::convolve_exact(su, sw, out_len, bound, options.threads);
  }
  return out;
}

CoeffVector convolution_power(const CoeffVector& u, unsigned k, std::uint64_t cap,
                              const ConvolutionOptions& options) {
  CoeffVector result = delta(cap);
  result.meta.P = u.meta.P;
  result.meta.n = u.meta.n;
  if (k == 0) return result;
  CoeffVector base = u;
  base.coeffs.resize(cap + 1, 0);
  bool first = true;
  for (unsigned e = k; e != 0; e >>= 1) {
    if (e & 1U) {
      result = first ? base : convolve(result, base, cap, options);
      first = false;
    }
    if (e > 1) base = convolve(base, base, cap, options);
  }
  result.kind = u.kind;
  result.meta = {u.meta.P, u.meta.n, u.meta.label + "^*" + std::to_string(k)};
  return result;
}

namespace {

constexpr std::array<char, 4> kMagic = {'W', 'D', 'C', '1'};

template <typename T>
void put_le(std::ostream& out, T value, std::size_t bytes) {
  for (std::size_t i = 0; i < bytes; ++i) {
    out.put(static_cast<char>(static_cast<unsigned char>(value & 0xff)));
    value >>= 8;
  }
}

template <typename T>
T get_le(std::istream& in, std::size_t bytes) {
  T value = 0;
  for (std::size_t i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw std::runtime_error("cache: truncated file");
    value |= static_cast<T>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return value;
}

}  // namespace

void write_cache(const std::filesystem::path& path, const CoeffVector& v) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cache: cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint64_t>(out, v.meta.P, 8);
  put_le<std::uint32_t>(out, v.meta.n, 4);
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(v.kind), 1);
  put_le<std::uint64_t>(out, v.cap(), 8);
  for (i128 c : v.coeffs) put_le<u128>(out, static_cast<u128>(c), 16);
  if (!out) throw std::runtime_error("cache: write failed for " + path.string());
}

CoeffVector read_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cache: cannot open " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("cache: bad magic in " + path.string());
  CoeffVector v;
  v.meta.P = get_le<std::uint64_t>(in, 8);
  v.meta.n = get_le<std::uint32_t>(in, 4);
  const auto kind = get_le<std::uint8_t>(in, 1);
  if (kind > 1) throw std::runtime_error("cache: unknown coefficient kind");
  v.kind = static_cast<CoeffKind>(kind);
  const auto cap = get_le<std::uint64_t>(in, 8);
  require_table_size(cap, "read_cache");
  v.coeffs.resize(cap + 1);
  for (auto& c : v.coeffs) c = static_cast<i128>(get_le<u128>(in, 16));
  if (in.peek() != std::char_traits<char>::eof())
    throw std::runtime_error("cache: trailing bytes in " + path.string());
  v.meta.label = "cached";
  return v;
}

namespace {

std::filesystem::path cache_path(const std::filesystem::path& dir, std::uint64_t P, unsigned n,
                                 const char* label) {
  return dir / ("base_P" + std::to_string(P) + "_n" + std::to_string(n) + "_" + label + ".wdc");
}

std::optional<CoeffVector> load_cached(const std::filesystem::path& path, std::uint64_t P,
                                       unsigned n, std::uint64_t cap) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  auto v = read_cache(path);
  if (v.meta.P != P || v.meta.n != n || v.cap() < cap) return std::nullopt;
  v.coeffs.resize(cap + 1);
  return v;
}

void store(const std::filesystem::path& path, const CoeffVector& v) {
  auto tmp = path;
  tmp += ".tmp";
  write_cache(tmp, v);
  std::filesystem::rename(tmp, path);
}

}  // namespace

BaseVectors base_vectors(std::uint64_t P, unsigned n, std::uint64_t cap,
                         const ConvolutionOptions& options) {
  if (options.cache_dir.empty()) return build_base_vectors(P, n, cap);
  const auto a_path = cache_path(options.cache_dir, P, n, "A");
  const auto e_path = cache_path(options.cache_dir, P, n, "E");
  auto a = load_cached(a_path, P, n, cap);
  auto e = load_cached(e_path, P, n, cap);
  if (!a || !e) {
    auto built = build_base_vectors(P, n, cap);
    std::filesystem::create_directories(options.cache_dir);
    store(a_path, built.A);
    store(e_path, built.E);
    return built;
  }
  BaseVectors out;
  out.A = std::move(*a);
  out.E = std::move(*e);
  out.A.meta.label = "A";
  out.E.meta.label = "E";
  out.G0 = out.A;
  out.G1 = out.A;
  out.G0.meta.label = "G0";
  out.G1.meta.label = "G1";
  for (std::size_t v = 0; v < out.A.coeffs.size(); ++v) {
    const i128 sum = out.A.coeffs[v] + out.E.coeffs[v];
    const i128 diff = out.A.coeffs[v] - out.E.coeffs[v];
    if (sum % 2 != 0 || diff % 2 != 0 || sum < 0 || diff < 0)
      throw std::runtime_error("cache: inconsistent A/E pair in " + options.cache_dir.string());
    out.G0.coeffs[v] = sum / 2;
    out.G1.coeffs[v] = diff / 2;
  }
  return out;
}

}  // namespace waring
