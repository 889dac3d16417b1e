/* C interface to the non-Archimedean Neumann solver library.
 *
 * All entry points take JSON parameter documents, return a status code, and
 * on success hand back an opaque result handle holding the JSON report and a
 * CSV table. The last error is available as a single-line JSON string.
 */
#ifndef VTN_H
#define VTN_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define VTN_OK 0
#define VTN_ERR_VALIDATION 1   /* bad parameters or malformed document */
#define VTN_ERR_INCOMPATIBLE 2 /* compatibility condition int f = -int g violated */
#define VTN_ERR_IDENTITY 3     /* a verification identity failed */
#define VTN_ERR_LIMIT 4        /* configured size cap exceeded */
#define VTN_ERR_INTERNAL 5

typedef struct vtn_result vtn_result;

/* Problem document: {"field":{q,n,alpha},"grid":{N,M,nu},"f":...,"g":...,
 * "solver":...,"gauge":...,"tolerances":...}. */
int vtn_solve(const char* spec_json, vtn_result** out);

/* {"field":{...},"grid":{N,M,nu},"trials":t,"seed":s,"perturb":p}.
 * Returns VTN_ERR_IDENTITY with a filled result when a check fails. */
int vtn_verify(const char* params_json, vtn_result** out);

/* {"field":{...},"grid":{N,nu},"cap":c}. */
int vtn_spectrum(const char* params_json, vtn_result** out);

/* {"field":{...},"N":n,"mu":m|null,"s_min":a,"s_max":b}; mu defaults to lambda_N. */
int vtn_kernel(const char* params_json, vtn_result** out);

/* Views owned by the result handle; valid until vtn_result_free. */
const char* vtn_result_json(const vtn_result* result);
const char* vtn_result_csv(const vtn_result* result);
void vtn_result_free(vtn_result* result);

/* Last error of the calling thread as single-line JSON, or NULL. */
const char* vtn_last_error(void);

const char* vtn_version(void);

#ifdef __cplusplus
}
#endif

#endif /* VTN_H */
