/* scheduler.c */

#include "scheduler.h"
#include "engine.h"
#include "posix_io.h"

void scheduler_unit(void) {}
