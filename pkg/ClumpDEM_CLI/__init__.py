script_name = 'ClumpDEM-CLI'
