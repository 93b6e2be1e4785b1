/* C interface to the rosette orbit library.
 *
 * Every object is an opaque handle released with its _destroy function.
 * Functions return a rosette_status; on failure rosette_last_error()
 * describes the problem (per thread, valid until the next failing call).
 * Output pointers are written only on success.
 */
#ifndef ROSETTE_ROSETTE_H
#define ROSETTE_ROSETTE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ROSETTE_BUILDING)
#    define ROSETTE_API __declspec(dllexport)
#  else
#    define ROSETTE_API __declspec(dllimport)
#  endif
#else
#  define ROSETTE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rosette_status {
  ROSETTE_OK = 0,
  ROSETTE_ERR_IO = 1,
  ROSETTE_ERR_DOMAIN = 2,   /* supercritical charge, no real orbit */
  ROSETTE_ERR_ARGUMENT = 3,
  ROSETTE_ERR_RESOURCE = 4, /* a size guard tripped */
  ROSETTE_ERR_INTERNAL = 5
} rosette_status;

typedef enum rosette_validity {
  ROSETTE_VALID = 0,
  ROSETTE_EXTENDED = 1, /* n_r = 0 */
  ROSETTE_SUPERCRITICAL = 2,
  ROSETTE_MALFORMED = 3
} rosette_validity;

typedef enum rosette_format {
  ROSETTE_FORMAT_CSV = 0,
  ROSETTE_FORMAT_JSON = 1,
  ROSETTE_FORMAT_SVG = 2
} rosette_format;

typedef struct rosette_ion rosette_ion;
typedef struct rosette_trajectory rosette_trajectory;
typedef struct rosette_catalog rosette_catalog;
typedef struct rosette_document rosette_document;

typedef struct rosette_orbit_params {
  double omega;
  double epsilon;
  double a; /* Bohr radii */
  double energy_ratio;
  double r_min;
  double r_max;
  double delta_theta;
  double revolutions_per_period;
  double radial_period;
} rosette_orbit_params;

typedef struct rosette_sample {
  double theta;
  double r;
  double x;
  double y;
} rosette_sample;

typedef struct rosette_intersection {
  double theta1;
  double theta2;
  int64_t k;
  int64_t m;
  double x;
  double y;
  double radius;
  int transversal;
} rosette_intersection;

typedef struct rosette_render_spec {
  int width;
  int height;
  double margin_fraction;
  int show_envelopes;
  int show_intersections;
} rosette_render_spec;

ROSETTE_API const char* rosette_version(void);
ROSETTE_API const char* rosette_last_error(void);
ROSETTE_API double rosette_default_alpha(void);

/* Ions. Structural checks only; a supercritical ion is created and reports
 * ROSETTE_ERR_DOMAIN from the calls that need an orbit. */
ROSETTE_API rosette_status rosette_ion_create(int z, int n_r, int n_theta, double alpha,
                                              rosette_ion** out);
ROSETTE_API void rosette_ion_destroy(rosette_ion* ion);
ROSETTE_API rosette_status rosette_ion_orbit_params(const rosette_ion* ion,
                                                    rosette_orbit_params* out);
ROSETTE_API rosette_status rosette_ion_validate(const rosette_ion* ion, rosette_validity* out);

/* Trajectory over [0, periods * radial_period]. */
ROSETTE_API rosette_status rosette_trajectory_sample(const rosette_ion* ion, double periods,
                                                     int samples_per_revolution,
                                                     rosette_trajectory** out);
ROSETTE_API size_t rosette_trajectory_size(const rosette_trajectory* trajectory);
ROSETTE_API rosette_status rosette_trajectory_point(const rosette_trajectory* trajectory,
                                                    size_t index, rosette_sample* out);
ROSETTE_API void rosette_trajectory_destroy(rosette_trajectory* trajectory);

/* Closed-form crossings in [theta_start, theta_end). Two-call pattern: pass
 * buffer = NULL to learn the count; *count always receives the total and
 * at most `capacity` entries are written. */
ROSETTE_API rosette_status rosette_enumerate_intersections(const rosette_ion* ion,
                                                           double theta_start, double theta_end,
                                                           rosette_intersection* buffer,
                                                           size_t capacity, size_t* count);

/* Catalogs: the embedded published catalog, a parsed catalog text, or
 * bare elements for a list of Z. */
ROSETTE_API rosette_status rosette_catalog_paper(rosette_catalog** out);
ROSETTE_API rosette_status rosette_catalog_parse(const char* text, size_t length,
                                                 rosette_catalog** out);
ROSETTE_API rosette_status rosette_catalog_from_z_list(const int* z, size_t count,
                                                       rosette_catalog** out);
ROSETTE_API size_t rosette_catalog_size(const rosette_catalog* catalog);
ROSETTE_API void rosette_catalog_destroy(rosette_catalog* catalog);

/* Documents. */
ROSETTE_API rosette_status rosette_emit_params(const rosette_ion* ion, rosette_document** out);
ROSETTE_API rosette_status rosette_emit_levels(int z, double alpha, int n_r_lo, int n_r_hi,
                                               int n_theta_lo, int n_theta_hi,
                                               rosette_format format, rosette_document** out);
ROSETTE_API rosette_status rosette_emit_trace(const rosette_trajectory* trajectory,
                                              rosette_format format, rosette_document** out);
/* verify != 0 also runs the polyline oracle on the trajectory. */
ROSETTE_API rosette_status rosette_emit_intersections(const rosette_trajectory* trajectory,
                                                      int verify, rosette_document** out);
ROSETTE_API rosette_status rosette_emit_table(const rosette_catalog* catalog, int n_r,
                                              int n_theta, double alpha, rosette_format format,
                                              rosette_document** out);
ROSETTE_API rosette_status rosette_emit_winding_report(const rosette_catalog* catalog, int n_r,
                                                       int n_theta, double alpha,
                                                       rosette_format format,
                                                       rosette_document** out);
ROSETTE_API rosette_status rosette_emit_scan(int z_from, int z_to, int n_r, int n_theta,
                                             double alpha, unsigned workers,
                                             rosette_format format, rosette_document** out);

ROSETTE_API void rosette_render_spec_default(rosette_render_spec* spec);
/* frame_count = 0 renders the static figure; otherwise frame
 * `frame_index` of `frame_count`. */
ROSETTE_API rosette_status rosette_render(const rosette_trajectory* trajectory,
                                          const rosette_render_spec* spec, int frame_index,
                                          int frame_count, rosette_document** out);
ROSETTE_API const char* rosette_frame_file_name(int index, char* buffer, size_t size);

ROSETTE_API const char* rosette_document_data(const rosette_document* doc);
ROSETTE_API size_t rosette_document_size(const rosette_document* doc);
ROSETTE_API rosette_format rosette_document_format(const rosette_document* doc);
ROSETTE_API size_t rosette_document_metadata_count(const rosette_document* doc);
ROSETTE_API rosette_status rosette_document_metadata(const rosette_document* doc, size_t index,
                                                     const char** key, const char** value);
/* Atomic: writes a temporary sibling, then renames over `path`. */
ROSETTE_API rosette_status rosette_document_write(const rosette_document* doc, const char* path);
ROSETTE_API void rosette_document_destroy(rosette_document* doc);

#ifdef __cplusplus
}
#endif

#endif /* ROSETTE_ROSETTE_H */
