#ifndef TEMPOGRAPH_H
#define TEMPOGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum TgStatus {
  TG_STATUS_OK = 0,
  TG_STATUS_INVALID_INPUT = 1,
  TG_STATUS_NULL_POINTER = 2,
  TG_STATUS_CYCLE = 3,
  TG_STATUS_PARSE = 4,
  TG_STATUS_OUT_OF_RANGE = 5,
  TG_STATUS_PANIC = 6,
} TgStatus;

/**
 * Opaque parsed netlist.
 */
typedef struct TgNetlist TgNetlist;

/**
 * Opaque simulation result. Strings returned by its accessors live as
 * long as the handle.
 */
typedef struct TgTimeline TgTimeline;

/**
 * A position in time units.
 */
typedef struct TgPoint {
  double x;
  double y;
  double z;
} TgPoint;

typedef struct TgChainTiming {
  double t_t;
  double t_i;
  double completion;
  double apparent;
  /**
   * `t_t / t_p_source`, NaN when the source processing time is 0.
   */
  double ratio_r;
} TgChainTiming;

typedef struct TgDispersionReport {
  double t_t_min;
  double t_t_max;
  double t_p;
  double proc_transfer_rel;
  double cache_transfer_rel;
  double dispersion;
} TgDispersionReport;

typedef struct TgEvent {
  double time;
  /**
   * Owned by the timeline.
   */
  const char *gate_id;
  /**
   * Owned by the timeline.
   */
  const char *net;
  /**
   * -1 undefined, 0 or 1.
   */
  int8_t value;
  bool provisional;
} TgEvent;

typedef struct TgSettle {
  bool settled;
  /**
   * Settle time, or the time of the last value seen when unsettled; NaN
   * if the output never changed.
   */
  double time;
  /**
   * -1 undefined, 0 or 1.
   */
  int8_t value;
} TgSettle;

typedef struct TgElement {
  struct TgPoint position;
  double processing_time;
} TgElement;

typedef struct TgCoreRecord {
  double request_sent;
  double request_arrived;
  double grant_issued;
  double grant_arrived;
  double data_at_bus;
  double message_done;
} TgCoreRecord;

typedef struct TgFellowRecord {
  double distance;
  double dispatched;
  double started;
  double finished;
  double arrived;
  double reception_start;
  double reception_end;
} TgFellowRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next call into this library on the same thread.
 */
const char *tg_last_error_message(void);

/**
 * Polyline length `from -> waypoints... -> to`. `waypoints` may be NULL
 * when `n_waypoints` is 0.
 */
enum TgStatus tg_transfer_time(struct TgPoint from,
                               struct TgPoint to,
                               const struct TgPoint *waypoints,
                               size_t n_waypoints,
                               double *out_time);

enum TgStatus tg_apparent_time(double t_p, double t_t, double *out_time);

enum TgStatus tg_chain_two(struct TgPoint source,
                           double t_p_source,
                           struct TgPoint observer,
                           double t_p_observer,
                           struct TgChainTiming *out_timing);

/**
 * Distances in meters, clock period in seconds, speed in m/s.
 */
enum TgStatus tg_dispersion(double d_min,
                            double d_max,
                            double clock_period,
                            double speed,
                            struct TgDispersionReport *out_report);

enum TgStatus tg_edvac_dispersion(struct TgDispersionReport *out_report);

enum TgStatus tg_amdahl_efficiency(double alpha, uint64_t n, double *out_efficiency);

enum TgStatus tg_alpha_from_efficiency(double efficiency, uint64_t n, double *out_alpha);

/**
 * Parses the line-based netlist format and validates it.
 */
enum TgStatus tg_netlist_parse(const char *source, struct TgNetlist **out_netlist);

void tg_netlist_free(struct TgNetlist *netlist);

enum TgStatus tg_netlist_simulate(const struct TgNetlist *netlist,
                                  bool emit_undefined,
                                  struct TgTimeline **out_timeline);

void tg_timeline_free(struct TgTimeline *timeline);

/**
 * Number of events, or 0 for NULL.
 */
size_t tg_timeline_len(const struct TgTimeline *timeline);

enum TgStatus tg_timeline_event(const struct TgTimeline *timeline,
                                size_t index,
                                struct TgEvent *out_event);

/**
 * Settlement of a declared output, by output name.
 */
enum TgStatus tg_timeline_settle(const struct TgTimeline *timeline,
                                 const char *output,
                                 struct TgSettle *out_settle);

/**
 * Simulates `n_cores` cores sharing one bus. `out_records` and
 * `out_grant_order` must each hold `n_cores` entries; records are indexed
 * like `cores`.
 */
enum TgStatus tg_bus_simulate(const struct TgElement *cores,
                              size_t n_cores,
                              struct TgPoint bus,
                              double word_transfer_time,
                              struct TgCoreRecord *out_records,
                              size_t *out_grant_order,
                              double *out_total);

/**
 * Orchestrated fork-join run. The orchestrator's processing time is the
 * initial sequential work, each fellow's its share of the parallel work.
 * `out_records` must hold `n_fellows` entries.
 */
enum TgStatus tg_distributed_simulate(struct TgElement orchestrator,
                                      const struct TgElement *fellows,
                                      size_t n_fellows,
                                      double dispatch_time,
                                      double collect_time,
                                      double closing_time,
                                      struct TgFellowRecord *out_records,
                                      double *out_total,
                                      size_t *out_critical);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TEMPOGRAPH_H */
