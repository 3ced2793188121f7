/* server.c */

#include "server.h"
#include "../core/scheduler.h"
#include "log.h"

void server_unit(void) {}
