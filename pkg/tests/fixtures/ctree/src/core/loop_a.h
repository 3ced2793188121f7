/* loop_a.h */
#ifndef SRC_CORE_LOOP_A_H
#define SRC_CORE_LOOP_A_H

#include "loop_b.h"

#endif /* SRC_CORE_LOOP_A_H */
