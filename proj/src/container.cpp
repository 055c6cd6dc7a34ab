#include "slpx/container.hpp"

#include <fstream>

#include "slpx/access.hpp"

namespace slpx {

namespace {

constexpr char kMagic[4] = {'S', 'L', 'P', 'X'};
constexpr uint8_t kVersion = 1;

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
}

struct Reader {
  const std::vector<uint8_t>& data;
  uint64_t pos = 0;

  uint8_t u8() {
    if (pos + 1 > data.size()) throw ParseError("container truncated");
    return data[pos++];
  }
  uint64_t u64() {
    if (pos + 8 > data.size()) throw ParseError("container truncated");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(data[pos + i]) << (8 * i);
    pos += 8;
    return v;
  }
  std::vector<uint8_t> bytes(uint64_t count) {
    if (pos + count > data.size()) throw ParseError("container truncated");
    std::vector<uint8_t> out(data.begin() + pos, data.begin() + pos + count);
    pos += count;
    return out;
  }
};

void put_component(std::vector<uint8_t>& out, uint64_t nbits, std::vector<uint8_t> payload) {
  put_u64(out, nbits);
  out.insert(out.end(), payload.begin(), payload.end());
}

BitVec read_bits(Reader& r, uint64_t expect_bits, const char* what) {
  const uint64_t nbits = r.u64();
  if (nbits != expect_bits) {
    throw ParseError(std::string(what) + ": unexpected bit length " + std::to_string(nbits) +
                     " (want " + std::to_string(expect_bits) + ")");
  }
  return BitVec::from_packed(r.bytes((nbits + 7) / 8), nbits);
}

BitVec read_bits_bounded(Reader& r, uint64_t max_bits, const char* what) {
  const uint64_t nbits = r.u64();
  if (nbits > max_bits) {
    throw ParseError(std::string(what) + ": bit length " + std::to_string(nbits) +
                     " exceeds bound " + std::to_string(max_bits));
  }
  return BitVec::from_packed(r.bytes((nbits + 7) / 8), nbits);
}

PackedArray read_array(Reader& r, uint32_t width, uint64_t count, uint64_t max_value,
                       const char* what) {
  const uint64_t nbits = r.u64();
  if (nbits != width * count) {
    throw ParseError(std::string(what) + ": unexpected bit length " + std::to_string(nbits));
  }
  PackedArray a = PackedArray::from_packed(r.bytes((nbits + 7) / 8), width, count);
  for (uint64_t i = 1; i <= count; ++i) {
    if (a.get(i) > max_value) {
      throw ParseError(std::string(what) + ": entry " + std::to_string(i) + " out of range");
    }
  }
  return a;
}

struct Header {
  uint64_t N, n, n_prime, sigma, start;
  std::vector<uint8_t> alphabet;
};

void put_header(std::vector<uint8_t>& out, const EncodingCommon& c, Scheme s) {
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(static_cast<uint8_t>(s));
  put_u64(out, c.N);
  put_u64(out, c.n);
  put_u64(out, c.n_prime);
  put_u64(out, c.sigma);
  put_u64(out, c.start);
  out.insert(out.end(), c.alphabet.begin(), c.alphabet.end());
}

void put_common_tail(std::vector<uint8_t>& out, const EncodingCommon& c) {
  put_component(out, c.G.bits(), c.G.packed_bytes());
  put_component(out, c.B.size(), c.B.packed_bytes());
}

// Shared structural validation after all components are read.
void check_common(const EncodingCommon& c) {
  if (c.P.size() != c.n || c.P.ones() != c.n_prime) throw ParseError("P has wrong shape");
  if (c.n_prime < 1 || !c.P.bit(c.n)) throw ParseError("P must end an SC-path at n");
  if (c.D.size() != c.n - c.n_prime) throw ParseError("D has wrong length");
  if (c.B.size() != 2 * c.n - c.n_prime) throw ParseError("B has wrong length");
  if (c.start < 1 || c.start > c.n) throw ParseError("start symbol out of range");
  if (c.N < 2) throw ParseError("text length below 2");
  if (c.sigma < 1) throw ParseError("alphabet is empty");
  // every trie slice must be a well-formed post-order full binary tree
  for (uint64_t r = 1; r <= c.n_prime; ++r) {
    const auto pi = c.path_by_rank(r);
    if (!c.trie(pi).valid_shape()) {
      throw ParseError("trie bits for path " + std::to_string(r) + " are malformed");
    }
    // piece sums must be strictly increasing
    for (uint64_t i = 2; i <= pi.m; ++i) {
      if (c.g(pi, i - 1) >= c.g(pi, i)) throw ParseError("piece sums not increasing");
    }
    if (c.g(pi, pi.m) > c.N) throw ParseError("piece sum exceeds text length");
  }
}

EncodingCommon read_common_header(Reader& r, Scheme& scheme) {
  for (char m : kMagic) {
    if (r.u8() != static_cast<uint8_t>(m)) throw ParseError("bad magic");
  }
  if (r.u8() != kVersion) throw ParseError("unsupported version");
  const uint8_t s = r.u8();
  if (s < 1 || s > 3) throw ParseError("unknown scheme");
  scheme = static_cast<Scheme>(s);
  EncodingCommon c;
  c.N = r.u64();
  c.n = r.u64();
  c.n_prime = r.u64();
  c.sigma = r.u64();
  c.start = r.u64();
  if (c.n == 0 || c.n_prime == 0 || c.n_prime > c.n) throw ParseError("bad header counts");
  if (c.sigma == 0 || c.sigma > 256) throw ParseError("bad alphabet size");
  c.alphabet = r.bytes(c.sigma);
  c.P = read_bits(r, c.n, "P");
  c.D = read_bits(r, c.n - c.n_prime, "D");
  return c;
}

void read_common_tail(Reader& r, EncodingCommon& c) {
  c.G = read_array(r, std::max(1u, ceil_lg(c.N)), c.n, c.N - 1, "G");
  c.B = read_bits(r, 2 * c.n - c.n_prime, "B");
  c.B.build_excess();
}

}  // namespace

std::vector<uint8_t> serialize(const AnyEncoding& enc) {
  std::vector<uint8_t> out;
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        put_header(out, e.c, T::kScheme);
        put_component(out, e.c.P.size(), e.c.P.packed_bytes());
        put_component(out, e.c.D.size(), e.c.D.packed_bytes());
        if constexpr (std::is_same_v<T, EncodingI>) {
          put_component(out, e.R1.bits(), e.R1.packed_bytes());
          put_component(out, e.R2.bits(), e.R2.packed_bytes());
        } else if constexpr (std::is_same_v<T, EncodingII>) {
          put_component(out, e.RE.bits(), e.RE.packed_bytes());
          put_component(out, e.ME.size(), e.ME.packed_bytes());
          put_component(out, e.TE.bits().size(), e.TE.bits().packed_bytes());
        } else {
          put_component(out, e.RX.bits(), e.RX.packed_bytes());
          put_component(out, e.S.size(), e.S.packed_bytes());
        }
        put_common_tail(out, e.c);
      },
      enc);
  return out;
}

AnyEncoding deserialize(const std::vector<uint8_t>& bytes) {
  Reader r{bytes};
  Scheme scheme;
  EncodingCommon c = read_common_header(r, scheme);
  const uint32_t w = c.sym_width();
  const uint64_t max_sym = c.n + c.sigma - 1;  // stored as id-1

  AnyEncoding out = EncodingI{};
  switch (scheme) {
    case Scheme::I: {
      EncodingI e;
      e.R1 = read_array(r, w, c.n - c.n_prime, max_sym, "R1");
      e.R2 = read_array(r, w, 2 * c.n_prime, max_sym, "R2");
      e.c = std::move(c);
      read_common_tail(r, e.c);
      out = std::move(e);
      break;
    }
    case Scheme::II: {
      EncodingII e;
      e.RE = read_array(r, w, c.n + 1, max_sym, "R_E");
      e.ME = read_bits(r, c.n + c.n_prime, "M_E");
      if (e.ME.ones() != c.n_prime - 1) throw ParseError("M_E has wrong popcount");
      e.TE = Louds::from_bits(read_bits(r, 2 * c.n_prime + 1, "T_E"));
      if (e.TE.nodes() != c.n_prime) throw ParseError("T_E has wrong node count");
      e.c = std::move(c);
      read_common_tail(r, e.c);
      out = std::move(e);
      break;
    }
    case Scheme::III: {
      EncodingIII e;
      e.RX = read_array(r, w, c.n, max_sym, "R_X");
      e.S = read_bits_bounded(r, c.n + c.n_prime + c.sigma, "S");
      if (e.S.ones() != c.n_prime) throw ParseError("S has wrong popcount");
      if (e.S.select1(1) - 1 < 1) throw ParseError("S decodes a zero id");
      if (e.S.select1(static_cast<int64_t>(c.n_prime)) - c.n_prime > c.n + c.sigma) {
        throw ParseError("S decodes out of symbol range");
      }
      e.c = std::move(c);
      read_common_tail(r, e.c);
      out = std::move(e);
      break;
    }
  }
  if (r.pos != bytes.size()) throw ParseError("trailing bytes after container");
  std::visit([&](const auto& e) { check_common(e.c); }, out);
  return out;
}

void save_container(const std::string& path, const AnyEncoding& enc) {
  const auto bytes = serialize(enc);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path);
}

AnyEncoding load_container(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

AnyEncoding build_encoding(const Slp& g, Scheme scheme) {
  switch (scheme) {
    case Scheme::I: return EncodingI::build(g);
    case Scheme::II: return EncodingII::build(g);
    case Scheme::III: return EncodingIII::build(g);
  }
  throw Error("unknown scheme");
}

const EncodingCommon& common_of(const AnyEncoding& enc) {
  return std::visit([](const auto& e) -> const EncodingCommon& { return e.c; }, enc);
}

Scheme scheme_of(const AnyEncoding& enc) {
  return std::visit([](const auto& e) { return std::decay_t<decltype(e)>::kScheme; }, enc);
}

SpaceReport space_report_of(const AnyEncoding& enc) {
  return std::visit([](const auto& e) { return e.space_report(); }, enc);
}

std::pair<uint8_t, QueryStats> access_any(const AnyEncoding& enc, uint64_t p) {
  return std::visit([&](const auto& e) { return access(e, p); }, enc);
}

std::pair<std::string, QueryStats> extract_any(const AnyEncoding& enc, uint64_t p, uint64_t q) {
  return std::visit([&](const auto& e) { return extract(e, p, q); }, enc);
}

std::pair<uint64_t, uint64_t> children_any(const AnyEncoding& enc, uint64_t u) {
  return std::visit([&](const auto& e) { return e.children(u); }, enc);
}

}  // namespace slpx
