#include "bentkit/catalog.hpp"

#include "bentkit/anf_text.hpp"
#include "bentkit/errors.hpp"

namespace bentkit {

namespace {

struct RawEntry {
  int m;
  int index;
  std::vector<const char*> coords;
  const char* snf;
  // |Aut(C)| as 2^a 3^b 5^c 7^d 31^e
  int code_aut[5];
  // |Aut(dev)| / |Aut(C)| for m = 1, same encoding
  int ratio[5];
};

const char* const kF11 = "14+25+36";
const char* const kF12 = "14+25+36+123";
const char* const kF13 = "12+14+26+35+45+123+245";
const char* const kF14 = "14+26+34+35+36+45+46+123+245+346";
const char* const kG1 = "15+16+24+25+34";
const char* const kG3 = "13+15+23+46+124";
const char* const kG5 = "13+23+24+35+56+126+235";
const char* const kG7 = "12+35+46+124+134+235+236+245";

const std::vector<RawEntry>& raw() {
  static const std::vector<RawEntry> kRaw = {
      {1, 1, {kF11}, "1^8 2^15 4^20 8^15 16^6 32^1", {15, 4, 1, 1, 0}, {13, 0, 0, 1, 1}},
      {1, 2, {kF12}, "1^8 2^15 4^20 8^15 16^6 32^1", {15, 1, 0, 1, 0}, {13, 3, 1, 1, 1}},
      {1, 3, {kF13}, "1^12 2^9 4^24 8^9 16^10 32^1", {13, 1, 1, 0, 0}, {11, 1, 0, 0, 0}},
      {1, 4, {kF14}, "1^14 2^7 4^24 8^7 16^12 32^1", {11, 1, 0, 1, 0}, {7, 0, 0, 0, 0}},

      {2, 1, {kF11, kG1}, "1^28 2^26 4^42 8^64 16^19 32^12 64^2", {9, 3, 0, 1, 0}, {}},
      {2, 2, {kF12, kG1}, "1^30 2^28 4^40 8^54 16^27 32^12 64^2", {9, 0, 0, 1, 0}, {}},
      {2, 3, {kF12, kG3}, "1^36 2^22 4^39 8^50 16^32 32^12 64^2", {7, 1, 0, 0, 0}, {}},
      {2, 4, {kF12, "12+13+16+26+45+56+156+235"}, "1^38 2^24 4^33 8^56 16^20 32^20 64^2", {6, 0, 0, 0, 0}, {}},
      {2, 5, {kF13, kG5}, "1^38 2^24 4^37 8^48 16^24 32^20 64^2", {6, 1, 0, 0, 0}, {}},
      {2, 6, {kF14, kG5}, "1^42 2^20 4^37 8^48 16^20 32^24 64^2", {4, 0, 0, 0, 0}, {}},
      {2, 7, {kF14, kG7}, "1^36 2^34 4^23 8^58 16^16 32^24 64^2", {4, 1, 0, 1, 0}, {}},
      {2, 8, {kF14, "12+16+23+35+46+56+124+134+156+235+236+245"}, "1^42 2^22 4^41 8^34 16^28 32^24 64^2",
       {1, 0, 0, 1, 0}, {}},
      {2, 9, {kF14, "12+15+16+25+36+45+46+125+126+135+136+145+256"}, "1^42 2^22 4^41 8^34 16^28 32^24 64^2",
       {1, 1, 0, 1, 0}, {}},

      {3, 1, {kF11, kG1, "14+15+24+25+26+35"}, "1^64 2^48 4^72 8^163 16^54 32^30 64^18", {9, 3, 0, 2, 0}, {}},
      {3, 2, {kF11, kG1, "12+14+15+24+25+26+35"}, "1^78 2^44 4^68 8^139 16^62 32^38 64^20", {9, 1, 0, 1, 0}, {}},
      {3, 3, {kF11, kG1, "13+14+26+45"}, "1^88 2^32 4^68 8^137 16^68 32^32 64^24", {6, 2, 0, 1, 0}, {}},
      {3, 4, {kF11, kG1, "14+15+24+25+26+35+123"}, "1^80 2^40 4^70 8^145 16^54 32^36 64^24", {6, 1, 0, 1, 0}, {}},
      {3, 5, {kF12, kG3, "13+24+25+56+125"}, "1^88 2^48 4^48 8^145 16^48 32^48 64^24", {3, 1, 0, 1, 0}, {}},
      {3, 6, {kF12, kG3, "12+14+16+34+46+56+126+136+246"}, "1^98 2^44 4^38 8^153 16^38 32^44 64^34",
       {4, 1, 0, 0, 0}, {}},
      {3, 7, {kF12, kG3, "12+13+24+25+35+45+56+125+345"}, "1^98 2^40 4^46 8^145 16^46 32^40 64^34",
       {3, 1, 0, 0, 0}, {}},
      {3, 8, {kF13, kG5, "16+23+26+35+45+56+123+124+256"}, "1^100 2^36 4^36 8^169 16^36 32^36 64^36",
       {2, 1, 0, 1, 0}, {}},
      {3, 9, {kF13, kG5, "16+25+26+35+36+45+56+123+124+234+256+346"}, "1^106 2^36 4^30 8^169 16^30 32^36 64^42",
       {2, 1, 0, 0, 0}, {}},
      {3, 10, {kF14, kG7, "12+13+25+35+36+45+123+134+236+246+345"}, "1^100 2^36 4^36 8^169 16^36 32^36 64^36",
       {3, 1, 0, 1, 0}, {}},
      {3, 11, {kF14, kG7, "12+13+24+25+34+35+36+45+123+134+236+246+345"},
       "1^100 2^36 4^36 8^169 16^36 32^36 64^36", {3, 1, 0, 2, 0}, {}},
      {3, 12, {kF14, kG7, "14+15+16+23+26+35+56+124+125+126+136+145+156+236+246+345"},
       "1^106 2^42 4^18 8^181 16^18 32^42 64^42", {0, 1, 0, 1, 0}, {}},
      {3, 13, {kF14, kG7, "13+14+24+34+35+36+46+56+123+125+145+146+235+256+356+456"},
       "1^106 2^36 4^30 8^169 16^30 32^36 64^42", {0, 1, 0, 1, 0}, {}},
  };
  return kRaw;
}

BigInt from_exponents(const int (&e)[5]) {
  static const int primes[5] = {2, 3, 5, 7, 31};
  BigInt r = 1;
  for (int i = 0; i < 5; ++i) {
    for (int k = 0; k < e[i]; ++k) r *= primes[i];
  }
  return r;
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  for (const auto& r : raw()) {
    CatalogEntry e;
    e.m = r.m;
    e.index = r.index;
    std::vector<BooleanFunction> coords;
    for (const char* c : r.coords) {
      e.anf_digits.emplace_back(c);
      coords.push_back(anf_to_table(parse_anf(c, 6, AnfSyntax::kDigits)));
    }
    e.representative = VectorialFunction(std::move(coords));
    e.expected_snf = SnfMultiset::parse(r.snf);
    e.expected_code_aut_order = from_exponents(r.code_aut);
    if (r.m == 1) {
      e.expected_design_aut_order = e.expected_code_aut_order * from_exponents(r.ratio);
    } else {
      // 2^(n+m) |Aut(C)|, with an extra factor 7 for the quadratic class.
      e.expected_design_aut_order = (BigInt(1) << (6 + r.m)) * e.expected_code_aut_order * (r.index == 1 ? 7 : 1);
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

int catalog_size(int m) {
  switch (m) {
    case 1: return 4;
    case 2: return 9;
    case 3: return 13;
    default: return 0;
  }
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> kEntries = build();
  return kEntries;
}

const CatalogEntry& catalog(int m, int index) {
  for (const auto& e : catalog_entries()) {
    if (e.m == m && e.index == index) return e;
  }
  throw NotFound("no catalog entry (" + std::to_string(m) + "," + std::to_string(index) + ")");
}

}  // namespace bentkit
