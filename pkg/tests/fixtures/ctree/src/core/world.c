/* world.c */

#include "world.h"
#include "engine.h"
#include "math_util.h"
/*
#include "ghost.h"
*/

void world_unit(void) {}
