/* entity.c */

#include "entity.h"
#include "util.h"
#include <assert.h>

void entity_unit(void) {}
