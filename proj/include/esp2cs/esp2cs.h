/* C interface to the esp2cs core: keys, genesis files, scenario simulation,
 * the gas bench, light-client sync, and in-process or networked nodes.
 *
 * Every function returns an esp2cs_status. On failure a description is
 * available from esp2cs_last_error() on the same thread until the next call.
 * Strings handed out through char** parameters are owned by the caller and
 * must be released with esp2cs_string_free(). */
#ifndef ESP2CS_H
#define ESP2CS_H

#include <stddef.h>
#include <stdint.h>

#if defined(ESP2CS_BUILDING_LIBRARY)
#define ESP2CS_API __attribute__((visibility("default")))
#else
#define ESP2CS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum esp2cs_status {
  ESP2CS_OK = 0,
  ESP2CS_ERR_ARGUMENT = 1,   /* null or malformed argument */
  ESP2CS_ERR_IO = 2,         /* file could not be read or written */
  ESP2CS_ERR_CONFIG = 3,     /* genesis, key or scenario file rejected */
  ESP2CS_ERR_NETWORK = 4,    /* bind failure or unreachable gateway */
  ESP2CS_ERR_REJECTED = 5,   /* chain or protocol rule violated */
  ESP2CS_ERR_INTERNAL = 99
} esp2cs_status;

typedef enum esp2cs_format {
  ESP2CS_FORMAT_TEXT = 0,
  ESP2CS_FORMAT_JSON = 1
} esp2cs_format;

ESP2CS_API const char* esp2cs_status_name(esp2cs_status status);
ESP2CS_API const char* esp2cs_last_error(void);
ESP2CS_API void esp2cs_string_free(char* s);
ESP2CS_API const char* esp2cs_version(void);

/* ---- keys ---- */

/* Writes a new key file. With a non-null `seed_label` the key is derived
 * deterministically from it (tests, reproducible setups). */
ESP2CS_API esp2cs_status esp2cs_keygen(const char* path, const char* seed_label, char** address_hex);
/* Loads a key file and reports its address and public key (hex). */
ESP2CS_API esp2cs_status esp2cs_key_inspect(const char* path, char** address_hex, char** public_key_hex);

/* ---- genesis ---- */

/* Writes a genesis file whose authorities are the given key files and whose
 * accounts are "key_file=balance" entries. `payment_owner_key` may be null. */
ESP2CS_API esp2cs_status esp2cs_genesis_write(const char* path, uint64_t genesis_time, uint64_t block_interval,
                                              const char* const* authority_keys, size_t n_authorities,
                                              const char* const* accounts, size_t n_accounts,
                                              const char* payment_owner_key);

/* ---- simulation ---- */

typedef struct esp2cs_sim_summary {
  int converged;
  int conservation_ok;
  uint64_t head_height;
  uint64_t receipts;
  uint64_t warnings;
} esp2cs_sim_summary;

/* Runs a scenario file. `seed` overrides the file's seed when `override_seed`
 * is non-zero. `summary` may be null. */
ESP2CS_API esp2cs_status esp2cs_sim_run(const char* scenario_path, int override_seed, uint64_t seed,
                                        esp2cs_format format, char** report, esp2cs_sim_summary* summary);

/* ---- gas bench ---- */

ESP2CS_API esp2cs_status esp2cs_bench_gas(esp2cs_format format, char** report, int* all_within_tolerance);

/* ---- nodes ---- */

typedef struct esp2cs_node esp2cs_node;

typedef struct esp2cs_node_options {
  const char* genesis_path;   /* required */
  const char* key_path;       /* null: follow the chain without proposing */
  const char* listen_host;    /* default "127.0.0.1" */
  int listen_port;            /* 0 picks a free port */
  const char* advertise;      /* "host:port" peers use to reach this node; default listen address */
  const char* const* peers;   /* "host:port" entries */
  size_t n_peers;
  const char* block_log;      /* null: in-memory only */
} esp2cs_node_options;

/* Opens a node. Nothing runs until esp2cs_node_start. */
ESP2CS_API esp2cs_status esp2cs_node_open(const esp2cs_node_options* options, esp2cs_node** node);
/* Binds the HTTP gateway and starts slot ticking in real time. */
ESP2CS_API esp2cs_status esp2cs_node_start(esp2cs_node* node);
ESP2CS_API int esp2cs_node_port(const esp2cs_node* node);
/* Issues one /v1 API request in-process. `body` may be null. */
ESP2CS_API esp2cs_status esp2cs_node_request(esp2cs_node* node, const char* method, const char* path,
                                             const char* query, const char* body, int* http_status,
                                             char** response);
ESP2CS_API void esp2cs_node_close(esp2cs_node* node);

/* ---- light client ---- */

/* Syncs headers from a gateway at host:port starting from the genesis in
 * `genesis_path` and reports the verified tip as JSON. */
ESP2CS_API esp2cs_status esp2cs_light_sync(const char* genesis_path, const char* host, int port, char** tip_json);

#ifdef __cplusplus
}
#endif

#endif
