#pragma once

// Plain-text manifests describing an atlas built from named closed forms.
//
//   # comment
//   name = my_torus
//   frame = euclidean_normal        position | euclidean_normal | euclidean_inward | normal_e<k>
//   betti = 1 2 1                   optional
//   seed_resolution = 64            optional
//   sample_resolution = 48          optional
//   dedup_rel = 1e-6                optional
//
//   [chart]
//   id = main
//   form = torus                    see form_names()
//   params = 2 1                    form parameters, optional
//   domain = -pi pi -pi pi          lo hi per axis; pi, -pi, 2pi and numbers accepted
//   periodic = 1 1                  per axis
//   valid = ...                     optional, same layout as domain
//   orientation = -1                optional, default 1
//   jet = analytic                  analytic | fd
//   fd_step = 1e-5                  optional, fd only
//   richardson = 0                  optional, fd only

#include "affcurv/catalog.hpp"

#include <istream>
#include <string>

namespace affcurv {

// Throws InputError with a line number on malformed input.
CatalogEntry parse_manifest(std::istream& in, const std::string& source = "<manifest>");
CatalogEntry load_manifest(const std::string& path);

}  // namespace affcurv
