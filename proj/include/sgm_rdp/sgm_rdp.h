//
// Copyright 2026 The sgm-rdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Convenience header pulling in the whole library.

#ifndef SGM_RDP_SGM_RDP_H_
#define SGM_RDP_SGM_RDP_H_

#include "sgm_rdp/accountant.h"
#include "sgm_rdp/budget.h"
#include "sgm_rdp/closed_form.h"
#include "sgm_rdp/format.h"
#include "sgm_rdp/log_math.h"
#include "sgm_rdp/oracle.h"
#include "sgm_rdp/quadrature.h"
#include "sgm_rdp/sweep.h"
#include "sgm_rdp/types.h"

#endif  // SGM_RDP_SGM_RDP_H_
