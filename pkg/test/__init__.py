# Do nothing

