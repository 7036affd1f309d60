#include "qc/qc.h"

#include <cstring>
#include <exception>
#include <string>

#include "report.hpp"
#include "series.hpp"

struct qc_config {
  qc::RunConfig cfg;
};
struct qc_report {
  std::string json;
  bool passed = false;
};
struct qc_hseries {
  qc::HSeries h;
};

namespace {

thread_local std::string last_error;

qc_status status_of(qc::ErrorKind k) {
  switch (k) {
    case qc::ErrorKind::Config: return QC_ERR_CONFIG;
    case qc::ErrorKind::InvalidArgument: return QC_ERR_ARGUMENT;
    case qc::ErrorKind::Domain: return QC_ERR_DOMAIN;
    case qc::ErrorKind::RegionMismatch: return QC_ERR_REGION;
    case qc::ErrorKind::WindowLoss: return QC_ERR_WINDOW;
    case qc::ErrorKind::Invariant: return QC_ERR_INVARIANT;
    case qc::ErrorKind::Internal: return QC_ERR_INTERNAL;
  }
  return QC_ERR_INTERNAL;
}

// Runs fn, mapping exceptions to status codes.
template <class Fn>
qc_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return QC_OK;
  } catch (const qc::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return QC_ERR_INTERNAL;
  }
}

qc_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return QC_ERR_ARGUMENT;
}

}  // namespace

extern "C" {

const char* qc_version(void) { return "1.0.0"; }
const char* qc_last_error(void) { return last_error.c_str(); }

const char* qc_status_name(qc_status s) {
  switch (s) {
    case QC_OK: return "ok";
    case QC_ERR_CONFIG: return "config";
    case QC_ERR_ARGUMENT: return "argument";
    case QC_ERR_DOMAIN: return "domain";
    case QC_ERR_REGION: return "region";
    case QC_ERR_WINDOW: return "window";
    case QC_ERR_INVARIANT: return "invariant";
    case QC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

qc_status qc_config_new(qc_config** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new qc_config{}; });
}
void qc_config_free(qc_config* c) { delete c; }

qc_status qc_config_load_json(qc_config* c, const char* text) {
  if (!c || !text) return null_arg("config/text");
  return guarded([&] { c->cfg = qc::config_from_json(text, c->cfg); });
}
qc_status qc_config_set_curve(qc_config* c, const char* name) {
  if (!c || !name) return null_arg("config/name");
  c->cfg.curve = name;
  return QC_OK;
}
qc_status qc_config_set_K(qc_config* c, int K) {
  if (!c) return null_arg("config");
  c->cfg.K = K;
  return QC_OK;
}
qc_status qc_config_set_window(qc_config* c, int lo, int hi) {
  if (!c) return null_arg("config");
  c->cfg.lo = lo;
  c->cfg.hi = hi;
  return QC_OK;
}
qc_status qc_config_set_max_mode(qc_config* c, int m) {
  if (!c) return null_arg("config");
  c->cfg.max_mode = m;
  return QC_OK;
}
qc_status qc_config_set_cartan(qc_config* c, const char* name) {
  if (!c || !name) return null_arg("config/name");
  c->cfg.cartan = name;
  return QC_OK;
}
qc_status qc_config_set_suite(qc_config* c, const char* name) {
  if (!c || !name) return null_arg("config/name");
  c->cfg.suite = name;
  return QC_OK;
}
qc_status qc_config_set_bidegree(qc_config* c, const char* name) {
  if (!c || !name) return null_arg("config/name");
  c->cfg.bidegree = name;
  return QC_OK;
}
qc_status qc_config_validate(const qc_config* c) {
  if (!c) return null_arg("config");
  return guarded([&] { c->cfg.validate(); });
}

qc_status qc_run(const qc_config* c, const char* sub, qc_report** out) {
  if (!c || !sub || !out) return null_arg("config/subcommand/out");
  *out = nullptr;
  return guarded([&] {
    qc::RunResult r = qc::run(sub, c->cfg);
    *out = new qc_report{std::move(r.json), r.passed};
  });
}
const char* qc_report_json(const qc_report* r) { return r ? r->json.c_str() : ""; }
int qc_report_passed(const qc_report* r) { return r && r->passed ? 1 : 0; }
void qc_report_free(qc_report* r) { delete r; }

qc_status qc_hseries_new(int K, qc_hseries** out) {
  if (!out) return null_arg("out");
  if (K < 1) {
    last_error = "K must be positive";
    return QC_ERR_ARGUMENT;
  }
  return guarded([&] { *out = new qc_hseries{qc::HSeries(K)}; });
}
void qc_hseries_free(qc_hseries* h) { delete h; }
int qc_hseries_order(const qc_hseries* h) { return h ? h->h.K() : 0; }

qc_status qc_hseries_set(qc_hseries* h, int i, const char* rational) {
  if (!h || !rational) return null_arg("series/value");
  if (i < 0 || i >= h->h.K()) {
    last_error = "coefficient index out of range";
    return QC_ERR_ARGUMENT;
  }
  return guarded([&] { h->h[i] = qc::qparse(rational); });
}

size_t qc_hseries_get(const qc_hseries* h, int i, char* buf, size_t cap) {
  if (!h || i < 0 || i >= h->h.K()) {
    last_error = "coefficient index out of range";
    return 0;
  }
  const std::string s = qc::qstr(h->h[i]);
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  return s.size();
}

qc_status qc_hseries_add(const qc_hseries* a, const qc_hseries* b, qc_hseries** out) {
  if (!a || !b || !out) return null_arg("series/out");
  return guarded([&] {
    const int K = std::min(a->h.K(), b->h.K());
    *out = new qc_hseries{a->h.truncated(K) + b->h.truncated(K)};
  });
}
qc_status qc_hseries_mul(const qc_hseries* a, const qc_hseries* b, qc_hseries** out) {
  if (!a || !b || !out) return null_arg("series/out");
  return guarded([&] {
    const int K = std::min(a->h.K(), b->h.K());
    *out = new qc_hseries{a->h.truncated(K) * b->h.truncated(K)};
  });
}
qc_status qc_hseries_inv(const qc_hseries* a, qc_hseries** out) {
  if (!a || !out) return null_arg("series/out");
  return guarded([&] { *out = new qc_hseries{a->h.inv()}; });
}
qc_status qc_hseries_exp(const qc_hseries* a, qc_hseries** out) {
  if (!a || !out) return null_arg("series/out");
  return guarded([&] { *out = new qc_hseries{a->h.exp()}; });
}
qc_status qc_hseries_log(const qc_hseries* a, qc_hseries** out) {
  if (!a || !out) return null_arg("series/out");
  return guarded([&] { *out = new qc_hseries{a->h.log()}; });
}

}  // extern "C"
