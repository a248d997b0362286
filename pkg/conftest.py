import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'collectorlab.settings')
django.setup()
