#include "negcone/negcone.h"

#include "negcone/pipeline.hpp"

#include <charconv>
#include <cstring>

struct negcone_space {
  negcone::Space space;
};

struct negcone_config {
  negcone::RunConfig cfg;
};

struct negcone_result {
  negcone::RunResult result;
};

namespace {

thread_local std::string last_error;

negcone_status fail(negcone_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

template <class T>
bool parse_number(const char* text, T& out) {
  const char* end = text + std::strlen(text);
  auto [p, ec] = std::from_chars(text, end, out);
  return ec == std::errc() && p == end;
}

}  // namespace

extern "C" {

const char* negcone_version(void) { return "1.0.0"; }

const char* negcone_last_error(void) { return last_error.c_str(); }

negcone_status negcone_space_create(const char* id, negcone_space** out) {
  if (!id || !out) return fail(NEGCONE_INVALID_ARGUMENT, "null argument");
  try {
    *out = new negcone_space{negcone::build_space(negcone::parse_space_id(id))};
    return NEGCONE_OK;
  } catch (const std::exception& e) {
    return fail(NEGCONE_INVALID_ARGUMENT, e.what());
  }
}

void negcone_space_destroy(negcone_space* space) { delete space; }

negcone_status negcone_space_counts(const negcone_space* space, size_t* curves, size_t* divisors, size_t* rank) {
  if (!space) return fail(NEGCONE_INVALID_ARGUMENT, "null space");
  if (curves) *curves = space->space.curves.size();
  if (divisors) *divisors = space->space.divisors.size();
  if (rank) *rank = space->space.rank;
  return NEGCONE_OK;
}

negcone_status negcone_space_curve_name(const negcone_space* space, size_t index, const char** name) {
  if (!space || !name) return fail(NEGCONE_INVALID_ARGUMENT, "null argument");
  if (index >= space->space.curves.size()) return fail(NEGCONE_INVALID_ARGUMENT, "curve index out of range");
  *name = space->space.curves[index].name.c_str();
  return NEGCONE_OK;
}

negcone_status negcone_space_divisor_name(const negcone_space* space, size_t index, const char** name) {
  if (!space || !name) return fail(NEGCONE_INVALID_ARGUMENT, "null argument");
  if (index >= space->space.divisors.size()) return fail(NEGCONE_INVALID_ARGUMENT, "divisor index out of range");
  *name = space->space.divisors[index].name.c_str();
  return NEGCONE_OK;
}

negcone_status negcone_pair(const negcone_space* space, const char* divisor, const char* curve, char* buf, size_t len) {
  if (!space || !divisor || !curve || !buf) return fail(NEGCONE_INVALID_ARGUMENT, "null argument");
  try {
    const auto& sp = space->space;
    const std::string v = negcone::to_string(sp.pair(negcone::parse_divisor(sp, divisor), negcone::parse_curve(sp, curve)));
    if (v.size() + 1 > len) return fail(NEGCONE_INVALID_ARGUMENT, "buffer too small");
    std::memcpy(buf, v.c_str(), v.size() + 1);
    return NEGCONE_OK;
  } catch (const std::exception& e) {
    return fail(NEGCONE_INVALID_ARGUMENT, e.what());
  }
}

negcone_status negcone_config_create(const char* command, const char* space, negcone_config** out) {
  if (!command || !space || !out) return fail(NEGCONE_INVALID_ARGUMENT, "null argument");
  try {
    auto* c = new negcone_config;
    c->cfg.command = command;
    c->cfg.space = negcone::parse_space_id(space);
    *out = c;
    return NEGCONE_OK;
  } catch (const std::exception& e) {
    return fail(NEGCONE_INVALID_ARGUMENT, e.what());
  }
}

void negcone_config_destroy(negcone_config* config) { delete config; }

negcone_status negcone_config_set(negcone_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(NEGCONE_INVALID_ARGUMENT, "null argument");
  auto& c = config->cfg;
  const std::string k = key;
  bool ok = true;
  if (k == "route") {
    c.route = value;
  } else if (k == "criteria") {
    c.criteria = value;
  } else if (k == "what") {
    c.what = value;
  } else if (k == "curve") {
    c.curve = value;
  } else if (k == "cover") {
    c.covers.emplace_back(value);
  } else if (k == "input") {
    c.input = value;
  } else if (k == "max-size") {
    ok = parse_number(value, c.max_size);
  } else if (k == "max-rays") {
    ok = parse_number(value, c.max_rays);
  } else if (k == "max-seconds") {
    ok = parse_number(value, c.max_seconds);
  } else if (k == "trials") {
    ok = parse_number(value, c.trials);
  } else if (k == "seed") {
    ok = parse_number(value, c.seed);
  } else if (k == "drop-kv") {
    std::size_t v = 0;
    ok = parse_number(value, v);
    c.mutation.drop_kv = v;
  } else if (k == "perturb-curve") {
    std::size_t v = 0;
    ok = parse_number(value, v);
    c.mutation.perturb_curve = v;
  } else {
    return fail(NEGCONE_INVALID_ARGUMENT, "unknown key " + k);
  }
  if (!ok) return fail(NEGCONE_INVALID_ARGUMENT, "bad value for " + k + ": " + value);
  return NEGCONE_OK;
}

negcone_status negcone_run(const negcone_config* config, negcone_result** out) {
  if (!config || !out) return fail(NEGCONE_INVALID_ARGUMENT, "null argument");
  try {
    auto* r = new negcone_result{negcone::run(config->cfg)};
    *out = r;
    const auto s = static_cast<negcone_status>(r->result.code);
    if (s != NEGCONE_OK) last_error = r->result.summary;
    return s;
  } catch (const std::exception& e) {
    *out = nullptr;
    return fail(NEGCONE_VERIFICATION_FAILURE, e.what());
  }
}

const char* negcone_result_json(const negcone_result* result) { return result ? result->result.json.c_str() : ""; }

const char* negcone_result_summary(const negcone_result* result) {
  return result ? result->result.summary.c_str() : "";
}

void negcone_result_destroy(negcone_result* result) { delete result; }

}  // extern "C"
