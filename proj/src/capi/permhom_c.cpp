#include "permhom.h"

#include <fstream>
#include <sstream>
#include <string>

#include "core/commands.hpp"
#include "core/interval_set.hpp"
#include "core/ordinal.hpp"
#include "core/trace.hpp"

using permhom::IntervalSet;
using permhom::Ordinal;

struct ph_ordinal {
  Ordinal v;
  mutable std::string printed;
};

struct ph_iset {
  IntervalSet v;
  mutable std::string printed;
};

namespace {

thread_local std::string g_last_error;

ph_status fail(ph_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename F>
ph_status guarded(ph_status parse_code, F&& f) {
  try {
    f();
    g_last_error.clear();
    return PH_OK;
  } catch (const std::domain_error& e) {
    return fail(PH_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(parse_code, e.what());
  }
}

}  // namespace

extern "C" {

const char* ph_last_error(void) { return g_last_error.c_str(); }

ph_status ph_ordinal_parse(const char* text, ph_ordinal** out) {
  if (!text || !out) return fail(PH_ERR_ARGUMENT, "null argument");
  return guarded(PH_ERR_PARSE, [&] { *out = new ph_ordinal{Ordinal::parse(text), {}}; });
}

ph_status ph_ordinal_from_nat(unsigned long long n, ph_ordinal** out) {
  if (!out) return fail(PH_ERR_ARGUMENT, "null argument");
  *out = new ph_ordinal{Ordinal(n), {}};
  g_last_error.clear();
  return PH_OK;
}

void ph_ordinal_free(ph_ordinal* o) { delete o; }

const char* ph_ordinal_str(const ph_ordinal* o) {
  if (!o) return "";
  o->printed = o->v.str();
  return o->printed.c_str();
}

ph_status ph_ordinal_add(const ph_ordinal* a, const ph_ordinal* b, ph_ordinal** out) {
  if (!a || !b || !out) return fail(PH_ERR_ARGUMENT, "null argument");
  return guarded(PH_ERR_PARSE, [&] { *out = new ph_ordinal{permhom::ord_add(a->v, b->v), {}}; });
}

ph_status ph_ordinal_left_sub(const ph_ordinal* a, const ph_ordinal* b, ph_ordinal** out) {
  if (!a || !b || !out) return fail(PH_ERR_ARGUMENT, "null argument");
  return guarded(PH_ERR_DOMAIN,
                 [&] { *out = new ph_ordinal{permhom::ord_left_sub(a->v, b->v), {}}; });
}

ph_status ph_ordinal_succ(const ph_ordinal* a, ph_ordinal** out) {
  if (!a || !out) return fail(PH_ERR_ARGUMENT, "null argument");
  return guarded(PH_ERR_PARSE, [&] { *out = new ph_ordinal{permhom::ord_succ(a->v), {}}; });
}

ph_status ph_ordinal_cmp(const ph_ordinal* a, const ph_ordinal* b, int* cmp) {
  if (!a || !b || !cmp) return fail(PH_ERR_ARGUMENT, "null argument");
  *cmp = a->v < b->v ? -1 : (b->v < a->v ? 1 : 0);
  g_last_error.clear();
  return PH_OK;
}

ph_status ph_iset_parse(const char* text, ph_iset** out) {
  if (!text || !out) return fail(PH_ERR_ARGUMENT, "null argument");
  return guarded(PH_ERR_PARSE, [&] { *out = new ph_iset{IntervalSet::parse(text), {}}; });
}

void ph_iset_free(ph_iset* s) { delete s; }

const char* ph_iset_str(const ph_iset* s) {
  if (!s) return "";
  s->printed = s->v.str();
  return s->printed.c_str();
}

ph_status ph_iset_union(const ph_iset* a, const ph_iset* b, ph_iset** out) {
  if (!a || !b || !out) return fail(PH_ERR_ARGUMENT, "null argument");
  return guarded(PH_ERR_PARSE, [&] { *out = new ph_iset{permhom::iset_union(a->v, b->v), {}}; });
}

ph_status ph_iset_intersect(const ph_iset* a, const ph_iset* b, ph_iset** out) {
  if (!a || !b || !out) return fail(PH_ERR_ARGUMENT, "null argument");
  return guarded(PH_ERR_PARSE,
                 [&] { *out = new ph_iset{permhom::iset_intersect(a->v, b->v), {}}; });
}

ph_status ph_iset_difference(const ph_iset* a, const ph_iset* b, ph_iset** out) {
  if (!a || !b || !out) return fail(PH_ERR_ARGUMENT, "null argument");
  return guarded(PH_ERR_PARSE,
                 [&] { *out = new ph_iset{permhom::iset_difference(a->v, b->v), {}}; });
}

ph_status ph_iset_order_type(const ph_iset* s, ph_ordinal** out) {
  if (!s || !out) return fail(PH_ERR_ARGUMENT, "null argument");
  return guarded(PH_ERR_PARSE, [&] { *out = new ph_ordinal{s->v.order_type(), {}}; });
}

ph_status ph_iset_contains(const ph_iset* s, const ph_ordinal* x, int* contains) {
  if (!s || !x || !contains) return fail(PH_ERR_ARGUMENT, "null argument");
  *contains = s->v.contains(x->v) ? 1 : 0;
  g_last_error.clear();
  return PH_OK;
}

int ph_command_run(const char* command, const char* config, const char* out_path) {
  try {
    permhom::RunConfig cfg = permhom::config_from_kv(config ? config : "");
    if (command) cfg.command = command;
    if (out_path) cfg.out_path = out_path;
    std::ostringstream sink;
    int code = permhom::run_command(cfg, sink);
    g_last_error.clear();
    return code;
  } catch (const std::exception& e) {
    return -static_cast<int>(fail(PH_ERR_PARSE, e.what()));
  }
}

int ph_verify_log(const char* path) {
  try {
    if (!path) return -static_cast<int>(fail(PH_ERR_ARGUMENT, "null path"));
    std::ifstream in(path);
    if (!in) return -static_cast<int>(fail(PH_ERR_IO, std::string("cannot open ") + path));
    auto records = permhom::read_records(in);
    g_last_error.clear();
    return permhom::verify_log(records) ? 0 : 1;
  } catch (const std::exception& e) {
    return -static_cast<int>(fail(PH_ERR_PARSE, e.what()));
  }
}

}  // extern "C"
