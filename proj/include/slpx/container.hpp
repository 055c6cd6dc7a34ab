#ifndef SLPX_CONTAINER_HPP
#define SLPX_CONTAINER_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "slpx/encoding.hpp"

namespace slpx {

using AnyEncoding = std::variant<EncodingI, EncodingII, EncodingIII>;

// Container layout (all integers little-endian):
//   magic "SLPX" | version u8 = 1 | scheme u8 in {1,2,3}
//   N u64 | n u64 | n_prime u64 | sigma u64 | start u64
//   alphabet: sigma raw bytes
//   components, each as u64 bit length + LSB-first packed payload, in
//   fixed order: P, D, scheme arrays (I: R1 R2 / II: R_E M_E T_E /
//   III: R_X S), G, B.
std::vector<uint8_t> serialize(const AnyEncoding& enc);
AnyEncoding deserialize(const std::vector<uint8_t>& bytes);

void save_container(const std::string& path, const AnyEncoding& enc);
AnyEncoding load_container(const std::string& path);

AnyEncoding build_encoding(const Slp& g, Scheme scheme);

// visit helpers
const EncodingCommon& common_of(const AnyEncoding& enc);
Scheme scheme_of(const AnyEncoding& enc);
SpaceReport space_report_of(const AnyEncoding& enc);
std::pair<uint8_t, QueryStats> access_any(const AnyEncoding& enc, uint64_t p);
std::pair<std::string, QueryStats> extract_any(const AnyEncoding& enc, uint64_t p, uint64_t q);
std::pair<uint64_t, uint64_t> children_any(const AnyEncoding& enc, uint64_t u);

}  // namespace slpx

#endif  // SLPX_CONTAINER_HPP
