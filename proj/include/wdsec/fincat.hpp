#pragma once

// Finite categories given by explicit composition tables, functors into
// finite sets, natural transformations, and a brute-force check of the
// Yoneda bijection Nat(Hom(A,-), F) ~ F(A).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wdsec/error.hpp"
#include "wdsec/kernels.hpp"

namespace wdsec::fincat {

struct Morphism {
  std::string id;
  std::string src;
  std::string tgt;

  bool operator==(const Morphism&) const = default;
};

/// One composition table entry: g o f = result.
struct CompositeEntry {
  std::string g;
  std::string f;
  std::string result;

  bool operator==(const CompositeEntry&) const = default;
};

struct FinCategory {
  std::string name;
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::map<std::string, std::string> identity;  // object -> identity morphism id
  std::vector<CompositeEntry> composition;

  bool operator==(const FinCategory&) const = default;
};

/// Structural problems (category "structure") are reported separately from
/// law violations ("identity", "associativity"); laws are only checked once
/// the tables are structurally sound. Diagnostics come out sorted, so the
/// report does not depend on declaration order.
Report validate_category(const FinCategory& cat);

struct FinSetFunctor {
  std::string name;
  std::map<std::string, std::vector<std::string>> object_map;
  std::map<std::string, std::map<std::string, std::string>> morphism_map;

  bool operator==(const FinSetFunctor&) const = default;
};

Report validate_functor(const FinCategory& cat, const FinSetFunctor& f);

struct NatTransformation {
  /// object -> (element of F(object) -> element of G(object))
  std::map<std::string, std::map<std::string, std::string>> components;
  /// Image indices in object order then element order; the sort key.
  std::vector<std::size_t> code;

  bool operator==(const NatTransformation&) const = default;
};

FinSetFunctor hom_functor(const FinCategory& cat, const std::string& object);

/// Every natural transformation F => G, ordered by `code`.
std::vector<NatTransformation> enumerate_nat(const FinCategory& cat, const FinSetFunctor& f,
                                             const FinSetFunctor& g,
                                             kernels::Exec exec = kernels::Exec::parallel);

/// True iff eta_B . F(m) = G(m) . eta_A for every morphism m: A -> B.
bool is_natural(const FinCategory& cat, const FinSetFunctor& f, const FinSetFunctor& g,
                const NatTransformation& eta);

struct YonedaWitness {
  std::string object;
  std::size_t nat_count = 0;
  std::size_t element_count = 0;
  /// (index into the enumerated transformations, eta_A(id_A)) in enumeration order.
  std::vector<std::pair<std::size_t, std::string>> pairs;
};

class YonedaFailure : public Error {
 public:
  using Error::Error;
};

/// Enumerates Nat(Hom(A,-), F), maps each eta to eta_A(id_A) and checks that
/// the map is a bijection onto F(A), including that every x in F(A) arises from
/// the transformation B -> (f -> F(f)(x)). Throws YonedaFailure otherwise.
YonedaWitness yoneda_check(const FinCategory& cat, const std::string& object,
                           const FinSetFunctor& f);

struct IsoWitness {
  std::string forward;   // A -> B
  std::string backward;  // B -> A
};

struct RepresentableIso {
  bool isomorphic = false;
  std::size_t natural_isos = 0;
  std::optional<IsoWitness> witness;
};

/// Looks for a natural isomorphism Hom(A,-) ~ Hom(B,-). When one exists the
/// pair of morphisms it determines is checked to compose to both identities.
RepresentableIso representable_iso_check(const FinCategory& cat, const std::string& a,
                                         const std::string& b);

}  // namespace wdsec::fincat
