#ifndef QFLOW_H
#define QFLOW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QflowStatus {
  QFLOW_STATUS_OK = 0,
  QFLOW_STATUS_NULL_POINTER = 1,
  QFLOW_STATUS_INVALID_UTF8 = 2,
  QFLOW_STATUS_PARSE = 3,
  QFLOW_STATUS_INVALID = 4,
  QFLOW_STATUS_BUDGET = 5,
  QFLOW_STATUS_INCONSISTENT = 6,
  QFLOW_STATUS_INTERNAL = 7,
} QflowStatus;

/*
 An automaton over ordered letters.
 */
typedef struct QflowNfa QflowNfa;

/*
 The result of classifying a transducer.
 */
typedef struct QflowReport QflowReport;

/*
 A parsed transducer.
 */
typedef struct QflowTransducer QflowTransducer;

typedef struct QflowVerdict {
  /*
   Set when leakage grows linearly.
   */
  bool linear;
  /*
   The `k` of `k log n` growth; zero when `linear` is set.
   */
  size_t order;
} QflowVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 The message of the last failed call on this thread, or null. The pointer stays
 valid until the next `qflow_*` call on the same thread.
 */
const char *qflow_last_error(void);

/*
 # Safety
 `s` must be null or a string returned by this library that was not yet freed.
 */
void qflow_string_free(char *s);

/*
 # Safety
 `src` must be a NUL-terminated string; `out` must be writable.
 */
enum QflowStatus qflow_transducer_parse(const char *src, struct QflowTransducer **out);

/*
 # Safety
 `t` must be null or a handle from [`qflow_transducer_parse`] that was not yet freed.
 */
void qflow_transducer_free(struct QflowTransducer *t);

/*
 The trimmed observer automaton of `t`.

 # Safety
 `t` must be a live transducer handle; `out` must be writable.
 */
enum QflowStatus qflow_transducer_observer_nfa(const struct QflowTransducer *t,
                                               struct QflowNfa **out);

/*
 Largest number of distinct length-`k` observations one Bob strategy admits.

 # Safety
 `t` must be a live transducer handle; `count` must be writable.
 */
enum QflowStatus qflow_transducer_leakage_bruteforce(const struct QflowTransducer *t,
                                                     size_t k,
                                                     size_t strategy_cap,
                                                     size_t *count);

/*
 Classifies `t`. `budget_seconds` bounds how far the fit check extends.

 # Safety
 `t` must be a live transducer handle; `out` must be writable.
 */
enum QflowStatus qflow_transducer_classify(const struct QflowTransducer *t,
                                           size_t table_max,
                                           size_t budget_states,
                                           double budget_seconds,
                                           struct QflowReport **out);

/*
 # Safety
 `src` must be a NUL-terminated string; `out` must be writable.
 */
enum QflowStatus qflow_nfa_parse(const char *src, struct QflowNfa **out);

/*
 # Safety
 `a` must be null or a live automaton handle.
 */
void qflow_nfa_free(struct QflowNfa *a);

/*
 The text form of `a`, which [`qflow_nfa_parse`] reads back unchanged.

 # Safety
 `a` must be a live automaton handle; `out` must be writable.
 */
enum QflowStatus qflow_nfa_to_text(const struct QflowNfa *a, char **out);

/*
 The width of the length-`n` slice as a decimal string.

 # Safety
 `a` must be a live automaton handle; `out` must be writable.
 */
enum QflowStatus qflow_nfa_width(const struct QflowNfa *a,
                                 size_t n,
                                 size_t budget_states,
                                 char **out);

/*
 # Safety
 `r` must be null or a live report handle.
 */
void qflow_report_free(struct QflowReport *r);

/*
 # Safety
 `r` must be a live report handle; `out` must be writable.
 */
enum QflowStatus qflow_report_verdict(const struct QflowReport *r, struct QflowVerdict *out);

/*
 The report as `key: value` records.

 # Safety
 `r` must be a live report handle; `out` must be writable.
 */
enum QflowStatus qflow_report_to_records(const struct QflowReport *r, char **out);

/*
 Min-entropy capacity in bits of a channel, interactive channel or joint
 distribution given in text form.

 # Safety
 `src` must be a NUL-terminated string; `bits` must be writable.
 */
enum QflowStatus qflow_channel_capacity(const char *src, double *bits);

/*
 Library version, statically allocated.
 */
const char *qflow_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QFLOW_H */
