#ifndef RPCFRAG_H
#define RPCFRAG_H

#include <stdint.h>

#if defined(RPCFRAG_BUILDING)
#define RPCFRAG_API __attribute__((visibility("default")))
#else
#define RPCFRAG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rpcfrag_status {
    RPCFRAG_OK = 0,
    RPCFRAG_ERR_DOMAIN = 1,
    RPCFRAG_ERR_ARGUMENT = 2,
    RPCFRAG_ERR_MALFORMED_PARTITION = 3,
    RPCFRAG_ERR_CONFIGURATION = 4,
    RPCFRAG_ERR_NUMERIC = 5,
    RPCFRAG_ERR_INTEGRITY = 6,
    RPCFRAG_ERR_CONSTRUCTION = 7,
    RPCFRAG_ERR_INTERNAL = 8
} rpcfrag_status;

/* Message of the last failing call on this thread ("" if none). */
RPCFRAG_API const char* rpcfrag_last_error(void);
RPCFRAG_API const char* rpcfrag_status_name(rpcfrag_status status);
RPCFRAG_API const char* rpcfrag_version(void);

/* Receives one JSON record per call; the string lives until the callback returns. */
typedef void (*rpcfrag_sink)(const char* record, void* user);

/* Random streams addressed by (seed, stream_id). */
typedef struct rpcfrag_stream rpcfrag_stream;
RPCFRAG_API rpcfrag_status rpcfrag_stream_create(uint64_t seed, uint64_t stream_id,
                                                 rpcfrag_stream** out);
RPCFRAG_API void rpcfrag_stream_destroy(rpcfrag_stream* stream);
RPCFRAG_API rpcfrag_status rpcfrag_stream_uniform(rpcfrag_stream* stream, double* out);

/* Set partitions of {1..n}. */
typedef struct rpcfrag_partition rpcfrag_partition;
RPCFRAG_API rpcfrag_status rpcfrag_partition_parse(const char* json, rpcfrag_partition** out);
RPCFRAG_API rpcfrag_status rpcfrag_partition_from_labels(const int* labels, int n,
                                                         rpcfrag_partition** out);
RPCFRAG_API void rpcfrag_partition_destroy(rpcfrag_partition* pi);
RPCFRAG_API int rpcfrag_partition_size(const rpcfrag_partition* pi);
RPCFRAG_API int rpcfrag_partition_block_count(const rpcfrag_partition* pi);
/* Restricted growth string; capacity must be at least the ground set size. */
RPCFRAG_API rpcfrag_status rpcfrag_partition_labels(const rpcfrag_partition* pi, int* out,
                                                    int capacity);
RPCFRAG_API rpcfrag_status rpcfrag_partition_to_json(const rpcfrag_partition* pi,
                                                     rpcfrag_sink sink, void* user);
RPCFRAG_API rpcfrag_status rpcfrag_sample_crp(double alpha, double theta, int n,
                                              rpcfrag_stream* stream, rpcfrag_partition** out);

/* Closed forms. Compositions are arrays of positive block sizes. */
RPCFRAG_API rpcfrag_status rpcfrag_eppf_ruelle(double t, const int* parts, int k, double* out);
RPCFRAG_API rpcfrag_status rpcfrag_eppf_pd(double alpha, double theta, const int* parts, int k,
                                           double* out);
RPCFRAG_API rpcfrag_status rpcfrag_eppf_dislocation(double t, const int* parts, int k,
                                                    double* out);
RPCFRAG_API rpcfrag_status rpcfrag_jump_rate(double t, const rpcfrag_partition* pi, double* out);
RPCFRAG_API rpcfrag_status rpcfrag_split_rate(double t, int m, double* out);
RPCFRAG_API rpcfrag_status rpcfrag_survival(double t0, double t, int m, double* out);
RPCFRAG_API rpcfrag_status rpcfrag_coalescent_rate(int b, int k, double* out);
RPCFRAG_API rpcfrag_status rpcfrag_tagged_moment(double t, double q, double* out);
RPCFRAG_API rpcfrag_status rpcfrag_psi(double t, double q, double* out);

/* Parameters of the streaming entry points. Fields left at their initial
 * value (NaN for reals, 0 for counts) take the operation's default. */
typedef struct rpcfrag_params {
    uint64_t seed;
    int threads; /* 0: RPCFRAG_THREADS or the number of cores */
    uint64_t replicas;
    int n;
    double t;
    const double* times;
    int time_count;
    double eps;
    double alpha;
    double beta;
    double theta;
    double p;
    double cap;
    double horizon;
    int quad_points;
    const char* function; /* test function id for the empirical measure */
    const char* partition; /* JSON partition, e.g. an abs-continuity event */
} rpcfrag_params;

RPCFRAG_API void rpcfrag_params_init(rpcfrag_params* params);

/* kind: crp | pd | gem | cascade | nu. One record per replica, in replica order. */
RPCFRAG_API rpcfrag_status rpcfrag_sample(const char* kind, const rpcfrag_params* params,
                                          rpcfrag_sink sink, void* user);
/* engine: semigroup | jumpchain | coalescent. A header record per replica, then its events. */
RPCFRAG_API rpcfrag_status rpcfrag_simulate(const char* engine, const rpcfrag_params* params,
                                            rpcfrag_sink sink, void* user);
/* selector: all | exact | a suite name. *all_pass is 1 iff every report passed. */
RPCFRAG_API rpcfrag_status rpcfrag_verify(const char* selector, const rpcfrag_params* params,
                                          double scale, rpcfrag_sink sink, void* user,
                                          int* all_pass);
/* name: empirical-measure | martingale | record-hazard | abs-continuity | duality. */
RPCFRAG_API rpcfrag_status rpcfrag_experiment(const char* name, const rpcfrag_params* params,
                                              rpcfrag_sink sink, void* user, int* all_pass);
/* One record per suite: name, criterion, summary. */
RPCFRAG_API rpcfrag_status rpcfrag_suite_list(rpcfrag_sink sink, void* user);

#ifdef __cplusplus
}
#endif

#endif
