#include <stddef.h>

#include "vfock/vfock.h"

int vfock_c_smoke(void) {
  vf_weight* w = NULL;
  double lv = 0.0;
  if (vf_weight_from_json("{\"family\":\"exp_power\",\"alpha\":1,\"p\":1}", &w) != VF_OK) return 1;
  if (vf_weight_log_value(w, 2.0, &lv) != VF_OK) return 2;
  vf_weight_free(w);
  return lv == -2.0 ? 0 : 3;
}
