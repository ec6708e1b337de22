/* C interface to the qplane library. All strings are UTF-8; strings returned
 * through char** must be released with qp_string_free. Functions returning
 * qp_status leave a message for qp_last_error_message on failure. */
#ifndef QPLANE_H
#define QPLANE_H

#include <stddef.h>

#if defined(_WIN32)
#define QP_API __declspec(dllexport)
#else
#define QP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qp_status {
  QP_OK = 0,
  QP_BAD_PARAMETER = 1,
  QP_Q_RELATION_VIOLATED = 2,
  QP_DIMENSION_MISMATCH = 3,
  QP_NUMERICAL_BREAKDOWN = 4,
  QP_INCONCLUSIVE = 5,
  QP_CAP_EXCEEDED = 6,
  QP_OUT_OF_ANNULUS = 7,
  QP_IO_FAILURE = 8,
  QP_PARSE_ERROR = 9,
  QP_INTERNAL = 100
} qp_status;

typedef struct qp_pair qp_pair;
typedef struct qp_config qp_config;
typedef struct qp_classification qp_classification;
typedef struct qp_portrait qp_portrait;

QP_API const char* qp_version(void);
QP_API const char* qp_status_name(qp_status s);
/* Message of the last failure on the calling thread ("" if none). */
QP_API const char* qp_last_error_message(void);
QP_API void qp_string_free(char* s);

/* Pairs */
QP_API qp_status qp_pair_from_json(const char* json, qp_pair** out);
/* Shift T e_n = e_{n+1} and S e_n = q^n e_n on l_2(Z_+). */
QP_API qp_status qp_pair_model(double q_re, double q_im, qp_pair** out);
QP_API qp_status qp_pair_to_json(const qp_pair* pair, char** out);
/* 0 for a pair on l_2(Z_+). */
QP_API size_t qp_pair_dimension(const qp_pair* pair);
QP_API void qp_pair_free(qp_pair* pair);

/* Tolerance configuration */
QP_API qp_status qp_config_default(qp_config** out);
QP_API qp_status qp_config_from_json(const char* json, qp_config** out);
QP_API qp_status qp_config_set_workers(qp_config* cfg, unsigned workers);
QP_API qp_status qp_config_set_schedule(qp_config* cfg, const size_t* sizes, size_t count);
QP_API qp_status qp_config_to_json(const qp_config* cfg, char** out);
QP_API void qp_config_free(qp_config* cfg);

/* Point classification. point is "X,re,im" or "Y,re,im"; cfg may be NULL. */
QP_API qp_status qp_classify_point(const qp_pair* pair, const char* point, const qp_config* cfg,
                                   qp_classification** out);
QP_API qp_status qp_classification_to_json(const qp_classification* c, char** out);
QP_API qp_status qp_classification_csv_row(const qp_classification* c, char** out);
QP_API void qp_classification_dims(const qp_classification* c, size_t h[3]);
QP_API int qp_classification_in_sigma(const qp_classification* c);
QP_API int qp_classification_in_sigma_e(const qp_classification* c);
QP_API void qp_classification_free(qp_classification* c);
QP_API const char* qp_csv_header(void);

/* Scanning. grid_json NULL selects the default grids for the pair's q. */
QP_API qp_status qp_scan(const qp_pair* pair, const char* grid_json, const qp_config* cfg, qp_portrait** out);
QP_API size_t qp_portrait_size(const qp_portrait* p);
/* format is "csv", "json", "svg", or NULL to infer from the extension. */
QP_API qp_status qp_portrait_write(const qp_portrait* p, const char* path, const char* format);
QP_API qp_status qp_portrait_render(const qp_portrait* p, const char* format, char** out);
QP_API qp_status qp_portrait_read(const char* path, qp_portrait** out);
QP_API qp_status qp_portrait_summary(const qp_portrait* p, char** out);
/* pair NULL uses the pair stored in the portrait. */
QP_API qp_status qp_portrait_verify_projection(const qp_portrait* p, const qp_pair* pair, char** out);
QP_API void qp_portrait_free(qp_portrait* p);

/* Model claims report for q given as "re" or "re,im" (rationals allowed). */
QP_API qp_status qp_verify_model(const char* q, size_t n, char** report, int* pass);

/* Exact cohomology of a finite pair at a point, or of an exported complex
 * {"variant", "point", "d0", "d1"}. cap 0 selects the default. */
QP_API qp_status qp_oracle(const qp_pair* pair, const char* point, size_t cap, char** out);
QP_API qp_status qp_oracle_complex(const char* complex_json, size_t cap, char** out);

#ifdef __cplusplus
}
#endif

#endif
