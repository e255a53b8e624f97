/* Copyright 2026 The weillab Authors
 * SPDX-License-Identifier: Apache-2.0 */

/* The public header compiles as C and the library links from C. */

#include <stdio.h>
#include <string.h>

#include "weillab/weillab.h"

int main(void) {
  wl_poly* f = NULL;
  char* out = NULL;
  uint64_t n = 0;
  if (wl_poly_from_json("{\"p\":3,\"e\":1,\"coeffs\":[0,0,1]}", &f) != WL_OK) return 1;
  if (wl_count_value(NULL, f, 2, WL_COUNT_CHARSUM, &n) != WL_OK || n != 15) return 2;
  if (wl_constant(3, 2, 1, &out) != WL_OK || strstr(out, "\"C\":\"4\"") == NULL) return 3;
  wl_string_free(out);
  wl_poly_free(f);
  printf("ok\n");
  return 0;
}
