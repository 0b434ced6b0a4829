/* permhom C API: ordinal arithmetic, interval sets, and the command runner,
 * behind opaque handles with integer error codes. All strings are UTF-8 and
 * owned by the library until the next call on the same thread. */
#ifndef PERMHOM_H
#define PERMHOM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Error codes. Command exit codes (ph_command_run) are documented separately:
 * 0 ok, 1 verified property failure, 2 usage error, 3 budget exhausted. */
typedef enum ph_status {
  PH_OK = 0,
  PH_ERR_PARSE = 1,     /* malformed ordinal / interval set / config text */
  PH_ERR_ARGUMENT = 2,  /* null handle or invalid argument */
  PH_ERR_DOMAIN = 3,    /* operation undefined (e.g. left subtraction) */
  PH_ERR_IO = 4         /* cannot read or write a requested path */
} ph_status;

/* The message for the most recent failing call on this thread ("" if none). */
const char* ph_last_error(void);

/* ---- ordinals (Cantor normal form below w^w) ---- */
typedef struct ph_ordinal ph_ordinal;

ph_status ph_ordinal_parse(const char* text, ph_ordinal** out);
ph_status ph_ordinal_from_nat(unsigned long long n, ph_ordinal** out);
void ph_ordinal_free(ph_ordinal* o);
/* The printed form, valid until the handle is freed or reformatted. */
const char* ph_ordinal_str(const ph_ordinal* o);

ph_status ph_ordinal_add(const ph_ordinal* a, const ph_ordinal* b, ph_ordinal** out);
/* c with a + c = b; PH_ERR_DOMAIN when b < a. */
ph_status ph_ordinal_left_sub(const ph_ordinal* a, const ph_ordinal* b, ph_ordinal** out);
ph_status ph_ordinal_succ(const ph_ordinal* a, ph_ordinal** out);
/* -1, 0, 1 into *cmp. */
ph_status ph_ordinal_cmp(const ph_ordinal* a, const ph_ordinal* b, int* cmp);

/* ---- interval sets ---- */
typedef struct ph_iset ph_iset;

ph_status ph_iset_parse(const char* text, ph_iset** out);
void ph_iset_free(ph_iset* s);
const char* ph_iset_str(const ph_iset* s);

ph_status ph_iset_union(const ph_iset* a, const ph_iset* b, ph_iset** out);
ph_status ph_iset_intersect(const ph_iset* a, const ph_iset* b, ph_iset** out);
ph_status ph_iset_difference(const ph_iset* a, const ph_iset* b, ph_iset** out);
ph_status ph_iset_order_type(const ph_iset* s, ph_ordinal** out);
ph_status ph_iset_contains(const ph_iset* s, const ph_ordinal* x, int* contains);

/* ---- commands ---- */

/* Runs one subcommand as the CLI would. `config` is the plain key=value
 * config text (keys: command, args, lambda, budget, seed, out, catalog);
 * `command` overrides the config's command when non-null. The JSON-lines
 * trace goes to out_path when non-null (in addition to any out= key).
 * Returns the command exit code, or a negative ph_status on setup failure. */
int ph_command_run(const char* command, const char* config, const char* out_path);

/* Re-verifies a JSON-lines trace file; returns 0 when every checkable record
 * passes, 1 otherwise, or a negative ph_status on setup failure. */
int ph_verify_log(const char* path);

#ifdef __cplusplus
}
#endif

#endif /* PERMHOM_H */
