#include "kmlat/kmlat.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "report.hpp"

struct kmlat_context {
  std::uint64_t seed = 0;
  std::size_t max_elements = kmlat::groups::kDefaultCap;
  int json_indent = 2;
  kmlat_status last = KMLAT_OK;
  std::string detail;
};

struct kmlat_field {
  const kmlat::gf::Field* field = nullptr;
};

namespace {

using kmlat::report::ordered_json;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

kmlat_status set_error(kmlat_context* ctx, kmlat_status st, const std::string& detail) {
  if (ctx) {
    ctx->last = st;
    ctx->detail = detail;
  }
  return st;
}

// Runs body, which returns JSON; maps exceptions to status codes.
template <class Body>
kmlat_status guarded(kmlat_context* ctx, char** out, Body&& body) {
  if (!ctx) return KMLAT_INVALID_INPUT;
  if (!out) return set_error(ctx, KMLAT_INVALID_INPUT, "null output pointer");
  *out = nullptr;
  try {
    const ordered_json j = body();
    const std::string text = ctx->json_indent < 0 ? j.dump() : j.dump(ctx->json_indent);
    *out = dup(text);
    if (!*out) return set_error(ctx, KMLAT_INTERNAL, "out of memory");
    return set_error(ctx, KMLAT_OK, "");
  } catch (const kmlat::Error& e) {
    return set_error(ctx, static_cast<kmlat_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(ctx, KMLAT_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(ctx, KMLAT_INTERNAL, e.what());
  }
}

std::optional<bool> tri(int v, const char* name) {
  if (v < 0) return std::nullopt;
  if (v > 1) kmlat::fail(kmlat::ErrorCode::InvalidInput, std::string(name) + " must be -1, 0 or 1");
  return v == 1;
}

kmlat::lattice::ClassificationInput convert(const kmlat_classification_input* in) {
  if (!in) kmlat::fail(kmlat::ErrorCode::InvalidInput, "null input");
  kmlat::lattice::ClassificationInput c;
  c.p = in->p;
  c.q = in->q;
  c.m = in->m;
  c.levi = in->levi_pgl ? kmlat::lattice::Levi::PGL : kmlat::lattice::Levi::PSL;
  c.z_order = in->z_order;
  c.zmi_in_zg = tri(in->zmi_in_zg, "zmi_in_zg");
  c.qi_in_zg = tri(in->qi_in_zg, "qi_in_zg");
  c.qi0_in_zg = tri(in->qi0_in_zg, "qi0_in_zg");
  c.qi0_nontrivial = tri(in->qi0_nontrivial, "qi0_nontrivial");
  return c;
}

const kmlat::gf::Field& field_of(const kmlat_field* f) {
  if (!f || !f->field) kmlat::fail(kmlat::ErrorCode::InvalidInput, "null field handle");
  return *f->field;
}

std::string str(const char* s, const char* name) {
  if (!s) kmlat::fail(kmlat::ErrorCode::InvalidInput, std::string(name) + " is null");
  return s;
}

}  // namespace

extern "C" {

const char* kmlat_version(void) { return "1.0.0"; }

const char* kmlat_status_name(kmlat_status status) {
  return kmlat::error_name(static_cast<kmlat::ErrorCode>(status));
}

kmlat_context* kmlat_context_new(uint64_t seed) {
  auto* ctx = new (std::nothrow) kmlat_context;
  if (ctx) ctx->seed = seed;
  return ctx;
}

void kmlat_context_free(kmlat_context* ctx) { delete ctx; }

kmlat_status kmlat_context_set_max_elements(kmlat_context* ctx, size_t cap) {
  if (!ctx) return KMLAT_INVALID_INPUT;
  if (cap == 0) return set_error(ctx, KMLAT_INVALID_INPUT, "max_elements must be positive");
  ctx->max_elements = cap;
  return set_error(ctx, KMLAT_OK, "");
}

kmlat_status kmlat_context_set_json_indent(kmlat_context* ctx, int indent) {
  if (!ctx) return KMLAT_INVALID_INPUT;
  if (indent > 16) return set_error(ctx, KMLAT_INVALID_INPUT, "json indent must be at most 16");
  ctx->json_indent = indent;
  return set_error(ctx, KMLAT_OK, "");
}

kmlat_status kmlat_last_status(const kmlat_context* ctx) { return ctx ? ctx->last : KMLAT_INVALID_INPUT; }

const char* kmlat_last_error(const kmlat_context* ctx) { return ctx ? ctx->detail.c_str() : ""; }

void kmlat_string_free(char* s) { std::free(s); }

kmlat_status kmlat_field_new(kmlat_context* ctx, int q, kmlat_field** out) {
  if (!ctx) return KMLAT_INVALID_INPUT;
  if (!out) return set_error(ctx, KMLAT_INVALID_INPUT, "null output pointer");
  *out = nullptr;
  try {
    const auto& f = kmlat::gf::field_of_order(q);
    *out = new kmlat_field{&f};
    return set_error(ctx, KMLAT_OK, "");
  } catch (const kmlat::Error& e) {
    return set_error(ctx, static_cast<kmlat_status>(e.code()), e.what());
  } catch (const std::exception& e) {
    return set_error(ctx, KMLAT_INTERNAL, e.what());
  }
}

void kmlat_field_free(kmlat_field* field) { delete field; }

int kmlat_field_order(const kmlat_field* field) { return field && field->field ? field->field->q() : 0; }

kmlat_status kmlat_field_spec(kmlat_context* ctx, const kmlat_field* field, char** out) {
  if (!ctx) return KMLAT_INVALID_INPUT;
  if (!out) return set_error(ctx, KMLAT_INVALID_INPUT, "null output pointer");
  if (!field || !field->field) return set_error(ctx, KMLAT_INVALID_INPUT, "null field handle");
  *out = dup(field->field->spec_string());
  return set_error(ctx, *out ? KMLAT_OK : KMLAT_INTERNAL, *out ? "" : "out of memory");
}

void kmlat_classification_input_init(kmlat_classification_input* in) {
  if (!in) return;
  in->p = 2;
  in->q = 2;
  in->m = 2;
  in->levi_pgl = 0;
  in->z_order = 1;
  in->zmi_in_zg = -1;
  in->qi_in_zg = -1;
  in->qi0_in_zg = -1;
  in->qi0_nontrivial = -1;
}

kmlat_status kmlat_classify(kmlat_context* ctx, const kmlat_classification_input* in, char** out) {
  return guarded(ctx, out, [&] { return kmlat::report::classify(convert(in)); });
}

kmlat_status kmlat_min_covolume(kmlat_context* ctx, const kmlat_classification_input* in, char** out) {
  return guarded(ctx, out, [&] { return kmlat::report::min_covolume(convert(in)); });
}

kmlat_status kmlat_dickson(kmlat_context* ctx, const kmlat_field* field, const char* ambient, char** out) {
  return guarded(ctx, out, [&] {
    return kmlat::report::dickson(field_of(field), kmlat::groups::parse_ambient(str(ambient, "ambient")));
  });
}

kmlat_status kmlat_verify(kmlat_context* ctx, const kmlat_field* field, const char* kind, const char* type,
                          int radius, char** out) {
  return guarded(ctx, out, [&] {
    std::optional<kmlat::groups::GroupType> t;
    if (type && *type) t = kmlat::groups::parse_group_type(type);
    return kmlat::report::verify(field_of(field), kmlat::lattice::parse_lattice_kind(str(kind, "kind")), t,
                                 radius, ctx->max_elements);
  });
}

kmlat_status kmlat_km_act(kmlat_context* ctx, const kmlat_field* field, int m, const char* word,
                          const char* edge, const char* mode, int crosscheck, char** out) {
  return guarded(ctx, out, [&] {
    const std::string md = mode ? mode : "twisted";
    kmlat::kmaction::PhiMode pm;
    if (md == "twisted") {
      pm = kmlat::kmaction::PhiMode::Twisted;
    } else if (md == "identity") {
      pm = kmlat::kmaction::PhiMode::Identity;
    } else {
      kmlat::fail(kmlat::ErrorCode::ParseError, "mode must be identity or twisted, not '" + md + "'");
    }
    return kmlat::report::km_act(field_of(field), m, str(word, "word"), str(edge, "edge"), pm, crosscheck != 0);
  });
}

kmlat_status kmlat_zp_test(kmlat_context* ctx, const kmlat_field* field, int max_pairs, char** out) {
  return guarded(ctx, out, [&] { return kmlat::report::zp_test(field_of(field), max_pairs); });
}

kmlat_status kmlat_dihedral_search(kmlat_context* ctx, const kmlat_field* field, int window, int samples,
                                   char** out) {
  return guarded(ctx, out, [&] {
    return kmlat::report::dihedral_search(field_of(field), window, samples, ctx->seed);
  });
}

kmlat_status kmlat_tree_distance(kmlat_context* ctx, const kmlat_field* field, const char* m1, const char* m2,
                                 char** out) {
  return guarded(ctx, out, [&] {
    return kmlat::report::tree_distance(field_of(field), str(m1, "first matrix"), str(m2, "second matrix"));
  });
}

kmlat_status kmlat_tree_neighbors(kmlat_context* ctx, const kmlat_field* field, const char* vertex, char** out) {
  return guarded(ctx, out, [&] { return kmlat::report::tree_neighbors(field_of(field), str(vertex, "vertex")); });
}

kmlat_status kmlat_tree_permutation(kmlat_context* ctx, const kmlat_field* field, const char* g,
                                    const char* vertex, char** out) {
  return guarded(ctx, out, [&] {
    return kmlat::report::tree_permutation(field_of(field), str(g, "matrix"), str(vertex, "vertex"));
  });
}

}  // extern "C"
